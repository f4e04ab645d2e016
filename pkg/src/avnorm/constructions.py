"""Constructions of asymmetric vector norms.

``range_one``
    ``y -> q(y) x`` for an asymmetric norm ``q`` with ``q(x) = 1``.
``suspension_avn``
    the range-one operator of ``(t + g(x))^+`` onto the ray through ``e1``.
``avn_from_proper_cone``
    ``I - R`` for the suspension ``R`` of the gauge of a cross-section of a
    proper cone, written in a rotated frame; its cone range is the cone.
``complement``
    ``I - Q`` for a proper ``Q``, with cone range ``K^Q``.
``mix``
    convex combinations of operators sharing a cone range.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .avn import AvnOperator, Complement, Custom, FromProperCone, Mix, RangeOne, Suspension
from .cones import (
    ConeSpec,
    generator_matrix,
    halfspace_normals,
    interior_point,
    is_full_dimensional,
    is_pointed,
    same_cone,
    sample_members,
)
from .errors import (
    AxiomViolation,
    BadWeights,
    BoundednessViolation,
    ConeRangeMismatch,
    DimensionMismatch,
    NormalizationError,
    NotFullDimensional,
    NotPointed,
    NotProper,
)
from .norms import AsymmetricNorm, GaugeH, MaxPositivePart, axiom_check
from .norms import Suspension as SuspensionNorm
from .numeric import DEFAULT_TOL, SampleState, ToleranceConfig, as_vec, sample_normal, sample_unit_ball


def _zero_set(dim: int, fn, label: str) -> ConeSpec:
    """Analytic cone ``{y : fn(y) = 0}`` for a nonnegative, homogeneous ``fn``."""

    def viol(Y):
        return fn(Y) / (1.0 + np.linalg.norm(Y, axis=1))

    return ConeSpec.analytic(dim, viol, label=label)


def range_one(q: AsymmetricNorm, x, tol: ToleranceConfig = DEFAULT_TOL) -> AvnOperator:
    x = as_vec(x, q.dim).copy()
    qx = q.eval(x)
    if abs(qx - 1.0) > tol.membership_tol:
        raise NormalizationError(f"range-one operator needs q(x) = 1, got {qx!r}")
    x.setflags(write=False)
    if isinstance(q, MaxPositivePart):
        null = ConeSpec.negated(ConeSpec.orthant(q.dim))
    else:
        null = _zero_set(q.dim, q._eval, f"{{y : q(y) = 0}} for {q.kind}")
    return AvnOperator(
        map=lambda Y: q._eval(Y)[:, None] * x,
        cone_range=ConeSpec.ray(x),
        construction=RangeOne(q, x),
        null_cone=null,
        name=f"range-one {q.kind} along {_fmt(x)}",
    )


def _fmt(v) -> str:
    return "(" + ", ".join(f"{float(c):g}" for c in v) + ")"


def suspension_null_cone(g: AsymmetricNorm) -> ConeSpec:
    """``{(t, x) : t + g(x) <= 0}`` with a member sampler."""
    n = g.dim + 1

    def viol(Y):
        return np.maximum(0.0, Y[:, 0] + g._eval(Y[:, 1:])) / (1.0 + np.linalg.norm(Y, axis=1))

    def sampler(count, state):
        x, state = sample_unit_ball(g.dim, state, count)
        s, state = sample_normal((count,), state)
        t = -g._eval(x) - np.abs(s)
        return np.column_stack([t, x]), state

    return ConeSpec.analytic(n, viol, sampler, label="{(t,x) : t + g(x) <= 0}")


def suspension_avn(g: AsymmetricNorm, tol: ToleranceConfig = DEFAULT_TOL) -> AvnOperator:
    """``(t, x) -> (t + g(x))^+ e1`` on ``R x R^m``."""
    report = axiom_check(g, tol)
    if not report.passed:
        raise AxiomViolation(f"inner norm fails its axioms: {report.note}")
    q = SuspensionNorm(g)
    n = q.dim
    e1 = np.zeros(n)
    e1[0] = 1.0

    def apply(Y):
        out = np.zeros_like(Y)
        out[:, 0] = q._eval(Y)
        return out

    return AvnOperator(
        map=apply,
        cone_range=ConeSpec.ray(e1),
        construction=Suspension(g),
        claimed_properties=frozenset({"proper"}),
        null_cone=suspension_null_cone(g),
        name=f"suspension of {g.kind}",
    )


@dataclass(frozen=True, eq=False)
class Frame:
    """Orthonormal basis (columns) whose first vector is a chosen direction."""

    basis: np.ndarray

    @classmethod
    def from_direction(cls, d) -> "Frame":
        """Gram-Schmidt on ``d, e_1, ..., e_n``, dropping dependent vectors."""
        d = np.asarray(d, dtype=np.float64)
        n = d.size
        vecs = [d / np.linalg.norm(d)]
        for e in np.eye(n):
            v = e.copy()
            for b in vecs:
                v -= (b @ v) * b
            for b in vecs:
                v -= (b @ v) * b
            nv = np.linalg.norm(v)
            if nv > 1e-8:
                vecs.append(v / nv)
            if len(vecs) == n:
                break
        basis = np.column_stack(vecs)
        basis.setflags(write=False)
        return cls(basis)

    @property
    def axis(self) -> np.ndarray:
        return self.basis[:, 0]

    def forward(self, y):
        return np.asarray(y, dtype=np.float64) @ self.basis

    def backward(self, z):
        return np.asarray(z, dtype=np.float64) @ self.basis.T


def avn_from_proper_cone(k: ConeSpec, tol: ToleranceConfig = DEFAULT_TOL, u=None) -> AvnOperator:
    """A proper operator with cone range ``k`` for a proper cone in R^{m+1}, m >= 2.

    Rotate so that the interior direction ``u`` becomes ``(-1, 0)``; the
    cone is then ``{(t, x) : t + g(x) <= 0}`` with ``g`` the gauge of the
    cross-section at ``t = -1``, and the operator is ``I - R`` with ``R``
    the suspension of ``g``. Its null cone is the ray through ``-u``.

    ``u`` must lie in the interior of both the cone (so that ``0`` is
    interior to the cross-section) and its dual (so that the cross-section
    is bounded). The default is the sum of the normalized generators when
    that qualifies, and otherwise the LP-optimal central direction.
    """
    n = k.dim
    if n < 3:
        raise DimensionMismatch("the cone construction needs ambient dimension m + 1 >= 3")
    if not is_pointed(k, tol):
        raise NotPointed("cone is not pointed")
    if not is_full_dimensional(k):
        raise NotFullDimensional("cone has empty interior")
    normals = halfspace_normals(k)
    unit_normals = normals / np.linalg.norm(normals, axis=1, keepdims=True)
    unit_gens = _cone_generators(k)
    if u is None:
        u = interior_point(k, tol)
        if np.min(unit_gens.T @ u) <= tol.membership_tol * np.linalg.norm(u):
            u = _central_direction(unit_normals, unit_gens, tol)
    u = as_vec(u, n)
    if np.min(unit_normals @ u) <= tol.membership_tol * np.linalg.norm(u):
        raise NotFullDimensional("chosen direction is not interior to the cone")
    if np.min(unit_gens.T @ u) <= tol.membership_tol * np.linalg.norm(u):
        raise BoundednessViolation("chosen direction is not interior to the dual cone, "
                                   "so the cross-section is unbounded")
    frame = Frame.from_direction(-u)
    rotated = normals @ frame.basis
    head = rotated[:, 0]
    # each constraint <c, (-1, x)> >= 0 reads <c_rest / c_0, x> <= 1 since c_0 < 0
    gauge = GaugeH(rotated[:, 1:] / head[:, None])
    axis = frame.axis
    rest = frame.basis[:, 1:]

    def apply(Y):
        s = np.maximum(Y @ axis + gauge._eval(Y @ rest), 0.0)
        return Y - s[:, None] * axis

    return AvnOperator(
        map=apply,
        cone_range=k,
        construction=FromProperCone(k, frame, gauge, u),
        claimed_properties=frozenset({"proper"}),
        null_cone=ConeSpec.ray(axis.copy()),
        name=f"proper operator onto {k.describe()}",
    )


def _cone_generators(k: ConeSpec) -> np.ndarray:
    """Unit extreme rays (columns) of a pointed, full-dimensional polyhedral cone."""
    g = generator_matrix(k)
    if g is None:
        # k is the dual of the cone generated by its normals
        g = halfspace_normals(ConeSpec.from_generators(halfspace_normals(k))).T
    return g / np.linalg.norm(g, axis=0)


def _central_direction(unit_normals: np.ndarray, unit_gens: np.ndarray, tol: ToleranceConfig) -> np.ndarray:
    """Direction interior to both ``k`` and its dual: maximize the smallest
    normalized margin against every normal and every generator."""
    from scipy.optimize import linprog

    n = unit_normals.shape[1]
    rows = np.vstack([unit_normals, unit_gens.T])
    a_ub = np.hstack([-rows, np.ones((rows.shape[0], 1))])
    cost = np.zeros(n + 1)
    cost[-1] = -1.0
    res = linprog(cost, A_ub=a_ub, b_ub=np.zeros(rows.shape[0]),
                  bounds=[(-1.0, 1.0)] * n + [(None, 1.0)], method="highs")
    if res.status != 0 or res.x[-1] <= tol.membership_tol:
        raise BoundednessViolation("no direction is interior to both the cone and its dual")
    return res.x[:n]


def gauge_inequality(op: AvnOperator, Y) -> np.ndarray:
    """``t + g(x)`` in the frame of an operator built by :func:`avn_from_proper_cone`."""
    c = op.construction
    if not isinstance(c, FromProperCone):
        raise TypeError("operator was not built from a proper cone")
    Z = c.frame.forward(np.atleast_2d(Y))
    return Z[:, 0] + c.gauge._eval(Z[:, 1:])


def complement(op: AvnOperator, tol: ToleranceConfig = DEFAULT_TOL) -> AvnOperator:
    """``I - Q`` with cone range ``K^Q``; ``Q`` must pass the properness check."""
    from .verification import check_proper

    report = check_proper(op, tol)
    if not report.passed:
        raise NotProper(f"{op.describe()} is not proper (worst margin {report.worst_margin:.3e})")
    null = op.null_cone
    if null is None:
        null = _zero_set(op.dim, lambda Y: np.linalg.norm(op.map(Y), axis=1), f"zero set of {op.describe()}")
    claims = frozenset({"proper"}) if _negative_range_in_null(op, tol) else frozenset()
    return AvnOperator(
        map=lambda Y: Y - op.map(Y),
        cone_range=null,
        construction=Complement(op),
        claimed_properties=claims,
        null_cone=op.cone_range,
        name=f"I - [{op.describe()}]",
    )


def _negative_range_in_null(op: AvnOperator, tol: ToleranceConfig) -> bool:
    """Sampled test of ``-K`` inside ``K^Q``, under which ``I - Q`` is again proper."""
    try:
        members, _ = sample_members(op.cone_range, tol.sample_count, SampleState.from_tol(tol, stream=21))
    except Exception:
        return False
    vals = np.linalg.norm(op.map(-members), axis=1) / (1.0 + np.linalg.norm(members, axis=1))
    return bool(np.all(vals <= tol.membership_tol))


def mix(ops, weights, tol: ToleranceConfig = DEFAULT_TOL) -> AvnOperator:
    """Pointwise convex combination of operators with one cone range.

    No property is claimed for the result.
    """
    ops = tuple(ops)
    w = np.asarray(weights, dtype=np.float64)
    if len(ops) == 0 or w.shape != (len(ops),):
        raise BadWeights("need one weight per operator")
    if np.any(w <= 0) or abs(w.sum() - 1.0) > tol.abs_tol:
        raise BadWeights("weights must be positive and sum to 1")
    first = ops[0]
    for other in ops[1:]:
        if other.dim != first.dim:
            raise ConeRangeMismatch("operators act on different spaces")
        if other.cone_range is not first.cone_range and not same_cone(first.cone_range, other.cone_range, tol):
            raise ConeRangeMismatch(f"{other.describe()} has a different cone range")

    def apply(Y):
        out = w[0] * ops[0].map(Y)
        for wi, op in zip(w[1:], ops[1:]):
            out = out + wi * op.map(Y)
        return out

    return AvnOperator(
        map=apply,
        cone_range=first.cone_range,
        construction=Mix(tuple(float(x) for x in w), ops),
        null_cone=_zero_set(first.dim, lambda Y: np.linalg.norm(apply(Y), axis=1), "zero set of the mix"),
        name=" + ".join(f"{wi:g}*[{op.describe()}]" for wi, op in zip(w, ops)),
    )


def primitive_counterexample() -> AvnOperator:
    """``S(u, v) = (0, v^+)`` on R^2, a retraction onto ``{(0, v) : v >= 0}``.

    It satisfies every lattice aVn condition except separation.
    """

    def apply(Y):
        out = np.zeros_like(Y)
        out[:, 1] = np.maximum(Y[:, 1], 0.0)
        return out

    return AvnOperator(
        map=apply,
        cone_range=ConeSpec.ray([0.0, 1.0]),
        construction=Custom("primitive"),
        null_cone=ConeSpec.halfspaces([[0.0, -1.0]]),
        name="S(u, v) = (0, v+)",
    )


def custom_operator(fn, cone_range: ConeSpec, description: str, null_cone: ConeSpec | None = None) -> AvnOperator:
    """Wrap an arbitrary batch map, e.g. as a negative control for the verifier."""
    return AvnOperator(map=fn, cone_range=cone_range, construction=Custom(description),
                       null_cone=null_cone, name=description)


__all__ = [
    "Frame",
    "avn_from_proper_cone",
    "complement",
    "custom_operator",
    "gauge_inequality",
    "mix",
    "primitive_counterexample",
    "range_one",
    "suspension_avn",
    "suspension_null_cone",
]
