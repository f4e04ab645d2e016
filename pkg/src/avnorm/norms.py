"""Scalar asymmetric norms.

An asymmetric norm ``q`` is nonnegative, positively homogeneous and
subadditive, and ``q(x) = q(-x) = 0`` only at ``x = 0``; it need not be
symmetric. Four families are provided:

* :class:`MaxPositivePart` -- ``max_i max(y_i, 0)``.
* :class:`GaugeH` -- the Minkowski gauge of ``{x : <a_j, x> <= 1}``.
* :class:`Suspension` -- ``(t + g(x))^+`` on ``R x R^m`` for an inner norm ``g``.
* :class:`HilbertLatticePos` -- Euclidean length of the lattice positive part.

All ``eval`` methods are vectorized over a leading batch axis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BoundednessViolation, DimensionMismatch, NormalizationError
from .lattice import YoudineLattice
from .numeric import (
    DEFAULT_TOL,
    SampleState,
    ToleranceConfig,
    as_batch,
    as_vec,
    matrix_rank,
    sample_unit_ball,
    sample_unit_sphere,
    sample_uniform,
)
from .report import FAIL, PASS, CheckReport
from .search import refine_minimum


class AsymmetricNorm:
    kind: str = ""
    dim: int

    def _eval(self, Y: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def eval(self, y):
        Y, single = as_batch(y, self.dim)
        out = self._eval(Y)
        return float(out[0]) if single else out

    __call__ = eval


@dataclass(frozen=True, eq=False)
class MaxPositivePart(AsymmetricNorm):
    dim: int
    kind = "max-positive-part"

    def _eval(self, Y):
        return np.maximum(Y.max(axis=1), 0.0)


@dataclass(frozen=True, eq=False)
class GaugeH(AsymmetricNorm):
    """Gauge of the polytope ``D' = {x : <a_j, x> <= 1}``, i.e. ``max_j <a_j, x>``.

    Construction rejects facet sets whose polytope is unbounded.
    """

    facets: np.ndarray
    dim: int = field(init=False)
    kind = "gauge"

    def __post_init__(self):
        a = np.atleast_2d(np.asarray(self.facets, dtype=np.float64))
        if a.size == 0 or not np.all(np.isfinite(a)):
            raise ValueError("facets must be a non-empty finite matrix")
        object.__setattr__(self, "facets", a)
        object.__setattr__(self, "dim", a.shape[1])
        a.setflags(write=False)
        if not positively_spanning(a):
            raise BoundednessViolation("gauge body is unbounded: facet normals do not positively span")

    def _eval(self, Y):
        return (Y @ self.facets.T).max(axis=1)


def positively_spanning(a: np.ndarray) -> bool:
    """Rows positively span R^n iff they have rank n and some strictly
    positive combination of them vanishes."""
    from scipy.optimize import linprog

    a = np.atleast_2d(a)
    p, n = a.shape
    if matrix_rank(a) < n:
        return False
    res = linprog(np.zeros(p), A_eq=a.T, b_eq=np.zeros(n), bounds=[(1.0, None)] * p, method="highs")
    return res.status == 0


def infinity_gauge(n: int) -> GaugeH:
    """Gauge of the cube ``[-1, 1]^n`` (the max-norm)."""
    eye = np.eye(n)
    return GaugeH(np.vstack([eye, -eye]))


def absolute_value() -> GaugeH:
    return GaugeH(np.array([[1.0], [-1.0]]))


@dataclass(frozen=True, eq=False)
class Suspension(AsymmetricNorm):
    """``q(t, x) = max(t + g(x), 0)``; the first coordinate is ``t``."""

    inner: AsymmetricNorm
    dim: int = field(init=False)
    kind = "suspension"

    def __post_init__(self):
        object.__setattr__(self, "dim", self.inner.dim + 1)

    def _eval(self, Y):
        return np.maximum(Y[:, 0] + self.inner._eval(Y[:, 1:]), 0.0)


@dataclass(frozen=True, eq=False)
class HilbertLatticePos(AsymmetricNorm):
    lattice: YoudineLattice
    dim: int = field(init=False)
    kind = "lattice-norm"

    def __post_init__(self):
        object.__setattr__(self, "dim", self.lattice.dim)

    def _eval(self, Y):
        return np.linalg.norm(self.lattice.pos_part(Y), axis=1)


def evaluate(q: AsymmetricNorm, y):
    return q.eval(y)


def axiom_check(q: AsymmetricNorm, tol: ToleranceConfig = DEFAULT_TOL) -> CheckReport:
    """Sampled check of nonnegativity, homogeneity, subadditivity and separation.

    The separation axiom is searched for a counterexample ``y`` on the unit
    sphere with ``q(y)`` and ``q(-y)`` both below ``membership_tol``; a
    pass means no witness was found in the sampled budget.
    """
    n, N = q.dim, tol.sample_count
    state = SampleState.from_tol(tol, stream=11)
    x, state = sample_unit_ball(n, state, N)
    y, state = sample_unit_ball(n, state, N)
    t, state = sample_uniform((N,), state, 0.0, 10.0)
    qx, qy = q._eval(x), q._eval(y)

    margins = {}
    witnesses = {}

    neg = np.maximum(0.0, -qx)
    i = int(np.argmax(neg))
    margins["nonnegativity"] = float(neg[i])
    witnesses["nonnegativity"] = [("y", x[i])]

    hom = np.abs(q._eval(t[:, None] * x) - t * qx) / (1.0 + t * np.linalg.norm(x, axis=1))
    i = int(np.argmax(hom))
    margins["homogeneity"] = float(hom[i])
    witnesses["homogeneity"] = [("y", x[i]), ("t", np.array([t[i]]))]

    sub = np.maximum(0.0, q._eval(x + y) - qx - qy) / (1.0 + np.linalg.norm(x, axis=1) + np.linalg.norm(y, axis=1))
    i = int(np.argmax(sub))
    margins["subadditivity"] = float(sub[i])
    witnesses["subadditivity"] = [("x", x[i]), ("y", y[i])]

    sep_y, sep_val, state = _separation_search(q, N, state)
    # separation is violated when both values are (numerically) zero
    margins["separation"] = 0.0 if sep_val > tol.membership_tol else 1.0
    witnesses["separation"] = [("y", sep_y)]

    failing = [name for name in ("nonnegativity", "homogeneity", "subadditivity")
               if margins[name] > tol.membership_tol]
    if margins["separation"] > 0:
        failing.append("separation")
    worst = max(margins[k] for k in ("nonnegativity", "homogeneity", "subadditivity"))
    note = ", ".join(f"{k} {margins[k]:.2e}" for k in ("nonnegativity", "homogeneity", "subadditivity"))
    note += f"; smallest max(q(y), q(-y)) on sphere {sep_val:.2e}"
    if failing:
        wit = [(f"{name}.{label}", vec) for name in failing for label, vec in witnesses[name]]
        return CheckReport(f"asymmetric-norm axioms [{q.kind}]", FAIL, 3 * N, worst, wit, tol,
                           note=f"violated: {', '.join(failing)}; {note}")
    return CheckReport(f"asymmetric-norm axioms [{q.kind}]", PASS, 3 * N, worst, [], tol,
                       note=note + f"; no separation witness in {N} samples")


def _separation_search(q: AsymmetricNorm, count: int, state: SampleState):
    n = q.dim
    probes = np.vstack([np.eye(n), -np.eye(n)])
    s, state = sample_unit_sphere(n, state, count)
    cand = np.vstack([probes, s])

    def both(Y):
        return np.maximum(q._eval(Y), q._eval(-Y))

    vals = both(cand)
    i = int(np.argmin(vals))
    y, val, state = refine_minimum(both, cand[i], state, sphere=True)
    return y, val, state


def properness_condition(q: AsymmetricNorm, x, tol: ToleranceConfig = DEFAULT_TOL,
                         samples: int | None = None) -> CheckReport:
    """Sampled check of ``q(y - q(y) x) = 0``, which makes ``y -> q(y) x`` proper."""
    x = as_vec(x, q.dim)
    qx = q.eval(x)
    if abs(qx - 1.0) > tol.membership_tol:
        raise NormalizationError(f"need q(x) = 1, got {qx!r}")
    N = samples or tol.sample_count
    state = SampleState.from_tol(tol, stream=12)
    y, state = sample_unit_ball(q.dim, state, N)
    vals = q._eval(y - q._eval(y)[:, None] * x)
    i = int(np.argmax(vals))
    worst = float(vals[i])
    if worst > tol.membership_tol:
        return CheckReport("range-one properness condition", FAIL, N, worst, [("y", y[i])], tol)
    return CheckReport("range-one properness condition", PASS, N, worst, [], tol)


def dimension_check(q: AsymmetricNorm, n: int) -> None:
    if q.dim != n:
        raise DimensionMismatch(f"norm acts on R^{q.dim}, expected R^{n}")


__all__ = [
    "AsymmetricNorm",
    "GaugeH",
    "HilbertLatticePos",
    "MaxPositivePart",
    "Suspension",
    "absolute_value",
    "axiom_check",
    "evaluate",
    "infinity_gauge",
    "positively_spanning",
    "properness_condition",
]
