"""Closed convex cones in R^n: representations, duality, membership and predicates.

A :class:`ConeSpec` holds one of six representations:

``simplicial``
    n linearly independent generators (columns of an n x n matrix).
``generators``
    finitely many generators, any number.
``halfspaces``
    rows ``c_j`` describing ``{y : <c_j, y> >= 0 for all j}``.
``ray``
    a single nonzero generator.
``negated``
    ``-K`` for another cone ``K``.
``analytic``
    a cone known only through a violation function (and optionally a
    member sampler), used for sets such as ``{(t, x) : t + g(x) <= 0}``.

Membership is scale aware: a vector ``y`` is accepted when its violation,
normalized by ``1 + |y|``, is at most ``membership_tol``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

from .errors import (
    DimensionMismatch,
    NotFullDimensional,
    NotPointed,
    SingularMatrix,
    UnsupportedRepresentation,
)
from .numeric import (
    DEFAULT_TOL,
    RCOND_THRESHOLD,
    SampleState,
    ToleranceConfig,
    as_batch,
    matrix_rank,
    reciprocal_condition,
    sample_normal,
    sample_unit_ball,
)

KINDS = ("simplicial", "generators", "halfspaces", "ray", "negated", "analytic")


def _columns(vectors) -> np.ndarray:
    arr = np.asarray(vectors, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2 or arr.size == 0:
        raise DimensionMismatch("generators must be a non-empty list of vectors")
    if not np.all(np.isfinite(arr)):
        raise ValueError("cone data must be finite")
    return arr.T.copy()


def _rows(vectors) -> np.ndarray:
    return _columns(vectors).T.copy()


def _unit_columns(m: np.ndarray) -> np.ndarray:
    return m / np.linalg.norm(m, axis=0, keepdims=True)


@dataclass(frozen=True, eq=False)
class ConeSpec:
    kind: str
    dim: int
    generators: np.ndarray | None = None
    normals: np.ndarray | None = None
    base: "ConeSpec | None" = None
    violation_fn: Callable[[np.ndarray], np.ndarray] | None = field(default=None, repr=False)
    sampler: Callable | None = field(default=None, repr=False)
    label: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown cone kind {self.kind!r}")
        if self.dim < 1:
            raise DimensionMismatch("ambient dimension must be at least 1")
        if self.generators is not None:
            g = self.generators
            if g.shape[0] != self.dim:
                raise DimensionMismatch(f"generators have length {g.shape[0]}, ambient dimension is {self.dim}")
            if np.any(np.linalg.norm(g, axis=0) == 0.0):
                raise ValueError("zero generator")
            g.setflags(write=False)
        if self.normals is not None:
            c = self.normals
            if c.shape[1] != self.dim:
                raise DimensionMismatch(f"normals have length {c.shape[1]}, ambient dimension is {self.dim}")
            if np.any(np.linalg.norm(c, axis=1) == 0.0):
                raise ValueError("zero normal")
            c.setflags(write=False)
        if self.kind == "simplicial":
            g = self.generators
            if g.shape[1] != self.dim:
                raise SingularMatrix("a simplicial cone needs exactly n generators")
            if reciprocal_condition(_unit_columns(g)) <= RCOND_THRESHOLD:
                raise SingularMatrix("simplicial generators are linearly dependent")
        elif self.kind == "ray" and self.generators.shape[1] != 1:
            raise ValueError("a ray has exactly one generator")

    # -- constructors -----------------------------------------------------

    @classmethod
    def simplicial(cls, generators, label: str = "") -> "ConeSpec":
        """Simplicial cone from a list of n generator vectors."""
        g = _columns(generators)
        return cls("simplicial", g.shape[0], generators=g, label=label)

    @classmethod
    def from_generators(cls, generators, label: str = "") -> "ConeSpec":
        g = _columns(generators)
        return cls("generators", g.shape[0], generators=g, label=label)

    @classmethod
    def halfspaces(cls, normals, label: str = "") -> "ConeSpec":
        c = _rows(normals)
        return cls("halfspaces", c.shape[1], normals=c, label=label)

    @classmethod
    def ray(cls, direction, label: str = "") -> "ConeSpec":
        g = _columns([direction])
        return cls("ray", g.shape[0], generators=g, label=label)

    @classmethod
    def negated(cls, cone: "ConeSpec", label: str = "") -> "ConeSpec":
        return cls("negated", cone.dim, base=cone, label=label)

    @classmethod
    def analytic(cls, dim: int, violation_fn, sampler=None, label: str = "") -> "ConeSpec":
        """Cone given by a vectorized violation function ``(N, dim) -> (N,)``.

        ``sampler(count, state) -> (members, state)`` is optional and enables
        member sampling for isotonicity and range checks.
        """
        return cls("analytic", dim, violation_fn=violation_fn, sampler=sampler, label=label)

    @classmethod
    def orthant(cls, n: int) -> "ConeSpec":
        return cls.simplicial(np.eye(n), label=f"R^{n}_+")

    # -- cached numerics --------------------------------------------------

    @cached_property
    def unit_generators(self) -> np.ndarray:
        return _unit_columns(self.generators)

    @cached_property
    def unit_normals(self) -> np.ndarray:
        return self.normals / np.linalg.norm(self.normals, axis=1, keepdims=True)

    @cached_property
    def coordinate_map(self) -> np.ndarray:
        """Inverse of the unit-generator matrix of a simplicial cone."""
        return np.linalg.inv(self.unit_generators)

    def describe(self) -> str:
        if self.label:
            return self.label
        if self.kind == "negated":
            return f"-({self.base.describe()})"
        if self.kind in ("simplicial", "generators", "ray"):
            cols = ", ".join(_fmt(c) for c in self.generators.T)
            return f"{self.kind} cone{{{cols}}}"
        if self.kind == "halfspaces":
            return f"halfspace cone with {self.normals.shape[0]} normals in R^{self.dim}"
        return f"analytic cone in R^{self.dim}"


def _fmt(v) -> str:
    return "(" + ",".join(f"{float(x):g}" for x in v) + ")"


# -- membership -------------------------------------------------------------


def violation(k: ConeSpec, y) -> np.ndarray | float:
    """Scale-normalized distance-like violation of ``y in K`` (0 for members).

    Vectorized over a leading batch axis.
    """
    Y, single = as_batch(y, k.dim)
    scale = 1.0 + np.linalg.norm(Y, axis=1)
    if k.kind == "simplicial":
        coef = Y @ k.coordinate_map.T
        v = np.maximum(0.0, -coef.min(axis=1)) / scale
    elif k.kind == "halfspaces":
        v = np.maximum(0.0, -(Y @ k.unit_normals.T).min(axis=1)) / scale
    elif k.kind == "ray":
        g = k.unit_generators[:, 0]
        t = Y @ g
        perp = np.linalg.norm(Y - np.outer(t, g), axis=1)
        v = np.maximum(perp, np.maximum(0.0, -t)) / scale
    elif k.kind == "generators":
        from .projection import project_batch

        proj = project_batch(k, Y)
        v = np.linalg.norm(Y - proj, axis=1) / scale
    elif k.kind == "negated":
        v = np.asarray(violation(k.base, -Y))
    else:
        v = np.asarray(k.violation_fn(Y), dtype=np.float64)
    v = v + 0.0  # drop negative zeros
    return float(v[0]) if single else v


def membership(k: ConeSpec, y, tol: ToleranceConfig = DEFAULT_TOL):
    """True where ``y`` lies in ``k`` up to ``membership_tol * (1 + |y|)``."""
    v = violation(k, y)
    if np.ndim(v) == 0:
        return bool(v <= tol.membership_tol)
    return v <= tol.membership_tol


def less_equal(k: ConeSpec, x, y, tol: ToleranceConfig = DEFAULT_TOL):
    """The cone order: ``x <=_K y`` iff ``y - x`` is in ``K``."""
    return membership(k, np.asarray(y, dtype=np.float64) - np.asarray(x, dtype=np.float64), tol)


@dataclass(frozen=True)
class OrderRelation:
    cone: ConeSpec

    def __call__(self, x, y, tol: ToleranceConfig = DEFAULT_TOL):
        return less_equal(self.cone, x, y, tol)


# -- duality ----------------------------------------------------------------


def dual_cone(k: ConeSpec) -> ConeSpec:
    """``K* = {x : <x, y> >= 0 for all y in K}``.

    Simplicial cones map to the simplicial cone of inverse-transpose columns;
    generator and halfspace representations swap roles.
    """
    if k.kind == "simplicial":
        d = np.linalg.inv(k.generators).T
        return ConeSpec("simplicial", k.dim, generators=d)
    if k.kind == "halfspaces":
        return ConeSpec("generators", k.dim, generators=k.normals.T.copy())
    if k.kind == "generators":
        return ConeSpec("halfspaces", k.dim, normals=k.generators.T.copy())
    if k.kind == "ray":
        if k.dim == 1:
            return ConeSpec("ray", 1, generators=k.generators.copy())
        return ConeSpec("halfspaces", k.dim, normals=k.generators.T.copy())
    if k.kind == "negated":
        return ConeSpec.negated(dual_cone(k.base))
    raise UnsupportedRepresentation("no dual for an analytic cone")


def polar_cone(k: ConeSpec) -> ConeSpec:
    """``K° = -K*``."""
    if k.kind == "negated":
        return dual_cone(k.base)
    d = dual_cone(k)
    if d.kind == "negated":
        return d.base
    if d.generators is not None:
        return ConeSpec(d.kind, d.dim, generators=-d.generators)
    return ConeSpec(d.kind, d.dim, normals=-d.normals)


# -- structural predicates -------------------------------------------------


def _unit_gram(k: ConeSpec) -> np.ndarray:
    if k.kind != "simplicial":
        raise UnsupportedRepresentation(f"predicate needs a simplicial cone, got {k.kind}")
    g = k.unit_generators
    return g.T @ g


def is_coisotone(k: ConeSpec, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Pairwise non-positive inner products between (normalized) generators."""
    gram = _unit_gram(k)
    off = gram[~np.eye(k.dim, dtype=bool)]
    return bool(np.all(off <= tol.membership_tol))


def is_selfdual_simplicial(k: ConeSpec, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    gram = _unit_gram(k)
    off = gram[~np.eye(k.dim, dtype=bool)]
    return bool(np.all(np.abs(off) <= tol.membership_tol))


def is_pointed(k: ConeSpec, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    if k.kind in ("simplicial", "ray"):
        return True
    if k.kind == "halfspaces":
        return matrix_rank(k.normals) == k.dim
    if k.kind == "generators":
        # pointed iff some y has <y, g_i> >= 1 for every generator
        return _lp_feasible(-k.unit_generators.T, -np.ones(k.generators.shape[1]))
    if k.kind == "negated":
        return is_pointed(k.base, tol)
    raise UnsupportedRepresentation("pointedness of an analytic cone is not decidable here")


def is_full_dimensional(k: ConeSpec) -> bool:
    if k.kind == "simplicial":
        return True
    if k.kind == "ray":
        return k.dim == 1
    if k.kind == "generators":
        return matrix_rank(k.generators) == k.dim
    if k.kind == "halfspaces":
        return _halfspace_depth(k)[1] > 1e-9
    if k.kind == "negated":
        return is_full_dimensional(k.base)
    raise UnsupportedRepresentation("dimension of an analytic cone is not decidable here")


def is_simplicial(k: ConeSpec) -> bool:
    return k.kind == "simplicial"


def _lp_feasible(a_ub: np.ndarray, b_ub: np.ndarray) -> bool:
    from scipy.optimize import linprog

    n = a_ub.shape[1]
    res = linprog(np.zeros(n), A_ub=a_ub, b_ub=b_ub, bounds=[(None, None)] * n, method="highs")
    return res.status == 0


def _halfspace_depth(k: ConeSpec) -> tuple[np.ndarray, float]:
    """Maximize ``s`` subject to ``<c_j, y> >= s``, ``-1 <= y <= 1``."""
    from scipy.optimize import linprog

    n = k.dim
    c_hat = k.unit_normals
    cost = np.zeros(n + 1)
    cost[-1] = -1.0
    a_ub = np.hstack([-c_hat, np.ones((c_hat.shape[0], 1))])
    b_ub = np.zeros(c_hat.shape[0])
    bounds = [(-1.0, 1.0)] * n + [(None, 1.0)]
    res = linprog(cost, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs")
    if res.status != 0:
        return np.zeros(n), 0.0
    return res.x[:n], float(res.x[-1])


def interior_point(k: ConeSpec, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """A point of the interior of ``k``.

    For generator representations this is the sum of the normalized
    generators. For halfspace cones it is the maximizer of the smallest
    normalized constraint value over the unit box.
    """
    if k.kind in ("simplicial", "generators"):
        if k.kind == "generators" and matrix_rank(k.generators) < k.dim:
            raise NotFullDimensional("generators do not span the ambient space")
        return k.unit_generators.sum(axis=1)
    if k.kind == "halfspaces":
        y, depth = _halfspace_depth(k)
        if depth <= tol.membership_tol:
            raise NotFullDimensional("halfspace cone has empty interior")
        return y
    if k.kind == "ray":
        if k.dim == 1:
            return k.unit_generators[:, 0].copy()
        raise NotFullDimensional("a ray in dimension >= 2 has empty interior")
    if k.kind == "negated":
        return -interior_point(k.base, tol)
    raise UnsupportedRepresentation("no interior point for an analytic cone")


# -- representation conversion ----------------------------------------------


def halfspace_normals(k: ConeSpec) -> np.ndarray:
    """Rows ``c_j`` with ``k = {y : <c_j, y> >= 0}``."""
    if k.kind == "halfspaces":
        return k.normals.copy()
    if k.kind == "simplicial":
        return np.linalg.inv(k.generators)
    if k.kind == "negated":
        return -halfspace_normals(k.base)
    if k.kind == "ray":
        g = k.unit_generators[:, 0]
        if k.dim == 1:
            return g.reshape(1, 1)
        basis = _orthogonal_complement(g)
        return np.vstack([g, basis, -basis])
    if k.kind == "generators":
        if k.dim == 2:
            return _normals_2d(k)
        return _normals_hull(k)
    raise UnsupportedRepresentation("no halfspace representation for an analytic cone")


def _orthogonal_complement(g: np.ndarray) -> np.ndarray:
    _, _, vt = np.linalg.svd(g.reshape(1, -1))
    return vt[1:]


def _normals_2d(k: ConeSpec) -> np.ndarray:
    if not is_pointed(k):
        raise UnsupportedRepresentation("2-D conversion supports pointed cones only")
    g = k.unit_generators
    mid = g.sum(axis=1)
    mid /= np.linalg.norm(mid)
    perp = np.array([-mid[1], mid[0]])
    angles = np.arctan2(g.T @ perp, g.T @ mid)
    lo = g[:, int(np.argmin(angles))]
    hi = g[:, int(np.argmax(angles))]
    if np.allclose(lo, hi):
        c = np.array([-lo[1], lo[0]])
        return np.array([c, -c, lo])
    normals = []
    for edge, other in ((lo, hi), (hi, lo)):
        c = np.array([-edge[1], edge[0]])
        if c @ other < 0:
            c = -c
        normals.append(c)
    return np.array(normals)


def _normals_hull(k: ConeSpec) -> np.ndarray:
    from scipy.spatial import ConvexHull, QhullError

    if not is_pointed(k):
        raise NotPointed("facet enumeration needs a pointed cone")
    if matrix_rank(k.generators) < k.dim:
        raise NotFullDimensional("facet enumeration needs a full-dimensional cone")
    pts = np.vstack([np.zeros(k.dim), k.unit_generators.T])
    try:
        hull = ConvexHull(pts)
    except QhullError as exc:  # pragma: no cover - rank checked above
        raise UnsupportedRepresentation(str(exc)) from exc
    eq = hull.equations
    through_origin = np.abs(eq[:, -1]) < 1e-10
    normals = -eq[through_origin, :-1]
    normals /= np.linalg.norm(normals, axis=1, keepdims=True)
    _, idx = np.unique(np.round(normals, 10), axis=0, return_index=True)
    return normals[np.sort(idx)]


def generator_matrix(k: ConeSpec) -> np.ndarray | None:
    """Columns generating ``k`` when a finite generator form is known."""
    if k.kind in ("simplicial", "generators", "ray"):
        return k.generators
    if k.kind == "negated":
        g = generator_matrix(k.base)
        return None if g is None else -g
    if k.kind == "halfspaces" and k.dim == 2 and is_pointed(k):
        try:
            return _halfspace_generators_2d(k)
        except UnsupportedRepresentation:
            return None
    return None


def _halfspace_generators_2d(k: ConeSpec) -> np.ndarray:
    # the dual of a 2-D halfspace cone is a generator cone; dualize twice
    dual = ConeSpec("generators", 2, generators=k.normals.T.copy())
    rows = _normals_2d(dual)
    return rows.T.copy()


def sample_members(k: ConeSpec, count: int, state: SampleState):
    """Random members of ``k``: nonnegative generator combinations with
    ``|N(0,1)|`` coefficients, or projections of ball samples for halfspace
    cones. Returns ``(members, next_state)``."""
    g = generator_matrix(k)
    if g is not None:
        coef, state = sample_normal((count, g.shape[1]), state)
        return np.abs(coef) @ (g / np.linalg.norm(g, axis=0)).T, state
    if k.kind == "halfspaces":
        from .projection import project_batch

        y, state = sample_unit_ball(k.dim, state, count)
        return project_batch(k, y), state
    if k.kind == "negated":
        m, state = sample_members(k.base, count, state)
        return -m, state
    if k.kind == "analytic" and k.sampler is not None:
        return k.sampler(count, state)
    raise UnsupportedRepresentation(f"cannot sample members of a {k.kind} cone")


def same_cone(a: ConeSpec, b: ConeSpec, tol: ToleranceConfig = DEFAULT_TOL, count: int | None = None) -> bool:
    """Sampled bidirectional membership agreement."""
    if a.dim != b.dim:
        return False
    n = count or tol.sample_count
    state = SampleState.from_tol(tol, stream=7)
    ma, state = sample_members(a, n, state)
    mb, state = sample_members(b, n, state)
    return bool(np.all(membership(b, ma, tol)) and np.all(membership(a, mb, tol)))
