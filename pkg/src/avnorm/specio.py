"""JSON specs for cones, asymmetric norms and operators.

Cone spec::

    {"kind": "simplicial" | "generators" | "ray", "dim": n, "columns": [[...], ...]}
    {"kind": "halfspaces", "dim": n, "rows": [[...], ...]}
    {"kind": "negated", "dim": n, "cone": <cone>}

Norm spec::

    {"kind": "max-positive-part", "dim": n}
    {"kind": "gauge", "facets": [[...], ...]}
    {"kind": "suspension", "inner": <norm>}
    {"kind": "lattice-norm", "cone": <cone>}

Operator spec (``"construction"`` selects the parameters)::

    {"construction": "range-one", "norm": <norm>, "x": [...]}
    {"construction": "suspension", "norm": <norm>}
    {"construction": "from-cone", "cone": <cone>, "u": [...]}      # "u" optional
    {"construction": "lattice", "cone": <cone>}
    {"construction": "projection", "cone": <cone>}
    {"construction": "complement", "inner": <operator>}
    {"construction": "mix", "weights": [...], "operators": [<operator>, ...]}

Wherever a nested spec is expected, a string is read as a path to a JSON
file, relative to the directory of the file that mentions it. An operator
spec may carry ``"verify": ["proper", "isotone", "lattice"]`` to request
extra checks. Floats are written with ``repr`` precision, so dumping and
loading a spec is lossless.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .avn import PROPERTIES, AvnOperator, Complement, FromProperCone, Lattice, Mix, Projection, RangeOne, Suspension
from .cones import ConeSpec
from .constructions import avn_from_proper_cone, complement, mix, range_one, suspension_avn
from .errors import ParseError
from .lattice import YoudineLattice, lattice_avn
from .norms import AsymmetricNorm, GaugeH, HilbertLatticePos, MaxPositivePart
from .norms import Suspension as SuspensionNorm
from .numeric import DEFAULT_TOL, ToleranceConfig
from .projection import projection_avn
from .report import dumps

CONE_KINDS = ("simplicial", "generators", "halfspaces", "ray", "negated")
NORM_KINDS = ("max-positive-part", "gauge", "suspension", "lattice-norm")
CONSTRUCTIONS = ("range-one", "suspension", "from-cone", "lattice", "projection", "complement", "mix")


# -- low level ---------------------------------------------------------------


def read_json(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _resolve(obj, base: Path):
    """Follow a file reference; returns ``(dict, directory for nested refs)``."""
    if isinstance(obj, str):
        path = (base / obj) if not Path(obj).is_absolute() else Path(obj)
        return read_json(path), path.parent
    if isinstance(obj, dict):
        return obj, base
    raise ParseError(f"expected an object or a file path, got {type(obj).__name__}")


def _field(obj: dict, name: str, where: str):
    if name not in obj:
        raise ParseError(f"{where}: missing field {name!r}")
    return obj[name]


def _float_matrix(value, where: str) -> np.ndarray:
    try:
        arr = np.array(value, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{where}: expected an array of number arrays") from exc
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ParseError(f"{where}: expected a non-empty array of equal-length number arrays")
    if not np.all(np.isfinite(arr)):
        raise ParseError(f"{where}: non-finite entry")
    return arr


def _float_vector(value, where: str, dim: int | None = None) -> np.ndarray:
    try:
        arr = np.array(value, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{where}: expected an array of numbers") from exc
    if arr.ndim != 1 or arr.size == 0 or not np.all(np.isfinite(arr)):
        raise ParseError(f"{where}: expected a non-empty array of finite numbers")
    if dim is not None and arr.size != dim:
        raise ParseError(f"{where}: expected length {dim}, got {arr.size}")
    return arr


def _dim(obj: dict, where: str) -> int:
    d = _field(obj, "dim", where)
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise ParseError(f"{where}: 'dim' must be a positive integer")
    return d


def parse_point(text: str, dim: int | None = None) -> np.ndarray:
    """Comma-separated floats, e.g. ``"1,-1"``."""
    try:
        vals = [float(s) for s in text.split(",")]
    except ValueError as exc:
        raise ParseError(f"cannot parse point {text!r}") from exc
    arr = np.array(vals)
    if not np.all(np.isfinite(arr)):
        raise ParseError(f"non-finite coordinate in {text!r}")
    if dim is not None and arr.size != dim:
        raise ParseError(f"point has {arr.size} coordinates, the cone lives in R^{dim}")
    return arr


# -- cones -------------------------------------------------------------------


def cone_from_dict(obj, base: Path | str = ".") -> ConeSpec:
    obj, base = _resolve(obj, Path(base))
    kind = _field(obj, "kind", "cone")
    if kind not in CONE_KINDS:
        raise ParseError(f"cone: unknown kind {kind!r}; expected one of {', '.join(CONE_KINDS)}")
    n = _dim(obj, "cone")
    label = obj.get("label", "")
    if kind == "negated":
        inner = cone_from_dict(_field(obj, "cone", "negated cone"), base)
        if inner.dim != n:
            raise ParseError(f"negated cone: inner cone lives in R^{inner.dim}, 'dim' says {n}")
        return ConeSpec.negated(inner, label=label)
    key = "rows" if kind == "halfspaces" else "columns"
    mat = _float_matrix(_field(obj, key, f"{kind} cone"), f"{kind} cone '{key}'")
    if mat.shape[1] != n:
        raise ParseError(f"{kind} cone: vectors have length {mat.shape[1]}, 'dim' is {n}")
    if np.any(np.linalg.norm(mat, axis=1) == 0.0):
        raise ParseError(f"{kind} cone: zero vector in '{key}'")
    if kind == "simplicial":
        if mat.shape[0] != n:
            raise ParseError(f"simplicial cone in R^{n} needs {n} columns, got {mat.shape[0]}")
        return ConeSpec.simplicial(mat, label=label)
    if kind == "generators":
        return ConeSpec.from_generators(mat, label=label)
    if kind == "ray":
        if mat.shape[0] != 1:
            raise ParseError("ray cone needs exactly one column")
        return ConeSpec.ray(mat[0], label=label)
    return ConeSpec.halfspaces(mat, label=label)


def cone_to_dict(k: ConeSpec) -> dict:
    if k.kind == "analytic":
        raise ParseError(f"cone {k.describe()!r} has no JSON form")
    if k.kind == "negated":
        out = {"kind": "negated", "dim": k.dim, "cone": cone_to_dict(k.base)}
    elif k.kind == "halfspaces":
        out = {"kind": "halfspaces", "dim": k.dim, "rows": k.normals.tolist()}
    else:
        out = {"kind": k.kind, "dim": k.dim, "columns": k.generators.T.tolist()}
    if k.label:
        out["label"] = k.label
    return out


def load_cone(path) -> ConeSpec:
    path = Path(path)
    return cone_from_dict(read_json(path), path.parent)


# -- norms -------------------------------------------------------------------


def norm_from_dict(obj, base: Path | str = ".") -> AsymmetricNorm:
    obj, base = _resolve(obj, Path(base))
    kind = _field(obj, "kind", "norm")
    if kind == "max-positive-part":
        return MaxPositivePart(_dim(obj, "max-positive-part norm"))
    if kind == "gauge":
        return GaugeH(_float_matrix(_field(obj, "facets", "gauge norm"), "gauge 'facets'"))
    if kind == "suspension":
        return SuspensionNorm(norm_from_dict(_field(obj, "inner", "suspension norm"), base))
    if kind == "lattice-norm":
        return HilbertLatticePos(YoudineLattice(cone_from_dict(_field(obj, "cone", "lattice norm"), base)))
    raise ParseError(f"norm: unknown kind {kind!r}; expected one of {', '.join(NORM_KINDS)}")


def norm_to_dict(q: AsymmetricNorm) -> dict:
    if isinstance(q, MaxPositivePart):
        return {"kind": q.kind, "dim": q.dim}
    if isinstance(q, GaugeH):
        return {"kind": q.kind, "facets": q.facets.tolist()}
    if isinstance(q, SuspensionNorm):
        return {"kind": q.kind, "inner": norm_to_dict(q.inner)}
    if isinstance(q, HilbertLatticePos):
        return {"kind": q.kind, "cone": cone_to_dict(q.lattice.cone)}
    raise ParseError(f"norm of type {type(q).__name__} has no JSON form")


# -- operators ---------------------------------------------------------------


@dataclass(frozen=True)
class OperatorSpec:
    """A loaded operator together with the extra checks its spec requests."""

    operator: AvnOperator
    verify: tuple[str, ...] = ()


def operator_from_dict(obj, base: Path | str = ".", tol: ToleranceConfig = DEFAULT_TOL) -> OperatorSpec:
    obj, base = _resolve(obj, Path(base))
    if not isinstance(obj, dict):
        raise ParseError("operator spec must be a JSON object")
    c = _field(obj, "construction", "operator")
    verify = obj.get("verify", [])
    if not isinstance(verify, list) or any(v not in PROPERTIES for v in verify):
        raise ParseError(f"'verify' must list properties among {sorted(PROPERTIES)}")
    where = f"{c} operator"
    if c == "range-one":
        q = norm_from_dict(_field(obj, "norm", where), base)
        x = _float_vector(_field(obj, "x", where), f"{where} 'x'", q.dim)
        op = range_one(q, x, tol)
    elif c == "suspension":
        op = suspension_avn(norm_from_dict(_field(obj, "norm", where), base), tol)
    elif c == "from-cone":
        k = cone_from_dict(_field(obj, "cone", where), base)
        u = _float_vector(obj["u"], f"{where} 'u'", k.dim) if "u" in obj else None
        op = avn_from_proper_cone(k, tol, u)
    elif c == "lattice":
        op = lattice_avn(cone_from_dict(_field(obj, "cone", where), base))
    elif c == "projection":
        op = projection_avn(cone_from_dict(_field(obj, "cone", where), base), tol)
    elif c == "complement":
        op = complement(operator_from_dict(_field(obj, "inner", where), base, tol).operator, tol)
    elif c == "mix":
        raw = _field(obj, "operators", where)
        if not isinstance(raw, list) or not raw:
            raise ParseError("mix: 'operators' must be a non-empty list")
        ops = [operator_from_dict(o, base, tol).operator for o in raw]
        w = _float_vector(_field(obj, "weights", where), "mix 'weights'")
        op = mix(ops, w, tol)
    else:
        raise ParseError(f"operator: unknown construction {c!r}; expected one of {', '.join(CONSTRUCTIONS)}")
    return OperatorSpec(op, tuple(verify))


def operator_to_dict(op: AvnOperator, verify=()) -> dict:
    """Self-contained spec with every file reference inlined."""
    c = op.construction
    if isinstance(c, RangeOne):
        out = {"construction": c.tag, "norm": norm_to_dict(c.norm), "x": np.asarray(c.x).tolist()}
    elif isinstance(c, Suspension):
        out = {"construction": c.tag, "norm": norm_to_dict(c.norm)}
    elif isinstance(c, FromProperCone):
        out = {"construction": c.tag, "cone": cone_to_dict(c.cone), "u": np.asarray(c.u).tolist()}
    elif isinstance(c, Lattice):
        out = {"construction": c.tag, "cone": cone_to_dict(c.lattice.cone)}
    elif isinstance(c, Projection):
        out = {"construction": c.tag, "cone": cone_to_dict(c.cone)}
    elif isinstance(c, Complement):
        out = {"construction": c.tag, "inner": operator_to_dict(c.inner)}
    elif isinstance(c, Mix):
        out = {"construction": c.tag, "weights": list(c.weights),
               "operators": [operator_to_dict(o) for o in c.operators]}
    else:
        raise ParseError(f"operator {op.describe()!r} has no JSON form")
    if verify:
        out["verify"] = list(verify)
    return out


def load_operator(path, tol: ToleranceConfig = DEFAULT_TOL) -> OperatorSpec:
    path = Path(path)
    return operator_from_dict(read_json(path), path.parent, tol)


def to_json(obj: dict) -> str:
    return dumps(obj)


__all__ = [
    "OperatorSpec",
    "cone_from_dict",
    "cone_to_dict",
    "load_cone",
    "load_operator",
    "norm_from_dict",
    "norm_to_dict",
    "operator_from_dict",
    "operator_to_dict",
    "parse_point",
    "read_json",
    "to_json",
]
