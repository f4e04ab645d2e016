"""Worked examples reproduced as check suites.

Each demo builds the objects of one classical example with its stated
parameters, runs the checks that instantiate each claim about it and
returns a :class:`~avnorm.report.SuiteResult`. Every report's note says
which claim it stands for; expected failures are wrapped with
:func:`~avnorm.report.expect`, so a demo passes exactly when every claim is
reproduced. Explicit witnesses from the examples appear as reports with
their vectors attached.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .avn import AvnOperator
from .cones import ConeSpec, sample_members, violation
from .constructions import (
    avn_from_proper_cone,
    complement,
    gauge_inequality,
    mix,
    primitive_counterexample,
    range_one,
    suspension_avn,
)
from .errors import DimensionMismatch, UnknownExample
from .lattice import YoudineLattice, lattice_avn
from .norms import (
    AsymmetricNorm,
    GaugeH,
    HilbertLatticePos,
    MaxPositivePart,
    absolute_value,
    axiom_check,
    infinity_gauge,
    properness_condition,
)
from .norms import Suspension as SuspensionNorm
from .numeric import DEFAULT_TOL, SampleState, ToleranceConfig, sample_normal, sample_uniform, sample_unit_ball
from .projection import projection_avn
from .report import FAIL, PASS, CheckReport, SuiteResult, expect
from .verification import (
    check_axiom4,
    check_complement_avn,
    check_homogeneity,
    check_isotone,
    check_proper,
    check_retraction,
    check_subadditive,
    order_margin,
)

DEFAULT_DIM = 3


def _claim(report: CheckReport, claim: str, name: str | None = None) -> CheckReport:
    note = claim if not report.note else f"{claim}; {report.note}"
    return CheckReport(name or report.check_name, report.verdict, report.samples_used, report.worst_margin,
                       list(report.witnesses), report.tolerance, note, report.wall_time)


def _exact(name: str, computed, expected, claim: str, tol: ToleranceConfig) -> CheckReport:
    """Bit-for-bit comparison of a computed vector with a stated one."""
    c = np.asarray(computed, dtype=np.float64)
    e = np.asarray(expected, dtype=np.float64)
    gap = float(np.max(np.abs(c - e)))
    verdict = PASS if np.array_equal(c, e) else FAIL
    return CheckReport(name, verdict, 1, gap, [("computed", c), ("expected", e)], tol, claim)


def _close(name: str, gaps, witnesses, claim: str, tol: ToleranceConfig, bound: float | None = None) -> CheckReport:
    gaps = np.atleast_1d(np.asarray(gaps, dtype=np.float64))
    bound = tol.membership_tol if bound is None else bound
    i = int(np.argmax(gaps))
    worst = float(gaps[i])
    if worst > bound:
        return CheckReport(name, FAIL, gaps.size, worst, witnesses(i), tol, claim)
    return CheckReport(name, PASS, gaps.size, worst, [], tol, claim)


def _axioms(op: AvnOperator, tol, samples, prefix: str = "") -> list[CheckReport]:
    claims = {
        "retraction": "Q is a retraction onto its cone range",
        "homogeneity": "Q is positively homogeneous",
        "subadditivity": "Q(x + y) <= Qx + Qy in the cone order",
        "axiom4": "Qx = Q(-x) = 0 only for x = 0",
    }
    reps = [check_retraction(op, tol, samples), check_homogeneity(op, tol, samples),
            check_subadditive(op, tol, samples), check_axiom4(op, tol, samples)]
    return [_claim(r, claims[r.check_name], prefix + r.check_name) for r in reps]


@dataclass(frozen=True, eq=False)
class _FirstCoordinateAlong(AsymmetricNorm):
    """``y -> <Qy, x> / <x, x>`` for a range-one operator along ``x``."""

    op: AvnOperator
    x: np.ndarray
    dim: int = field(init=False)
    kind = "recovered"

    def __post_init__(self):
        object.__setattr__(self, "dim", self.op.dim)

    def _eval(self, Y):
        return self.op.map(Y) @ self.x / (self.x @ self.x)


# -- demos -------------------------------------------------------------------


def demo_ska(tol: ToleranceConfig = DEFAULT_TOL, samples: int | None = None, dim: int = DEFAULT_DIM) -> SuiteResult:
    """Range-one operators and asymmetric norms determine each other."""
    _need_dim(dim, 1)
    facets = np.vstack([np.eye(dim), -np.ones((1, dim))])
    q = GaugeH(facets)
    x = np.eye(dim)[0]
    Q = range_one(q, x, tol)
    reports = [
        _claim(axiom_check(q, tol), "q = max(y_1, ..., y_n, -sum y) is an asymmetric norm", "q.axioms"),
        _exact("Q(x)=x", Q(x), x, "Q fixes x because q(x) = 1", tol),
    ]
    reports += _axioms(Q, tol, samples, "Q.")
    recovered = _FirstCoordinateAlong(Q, x)
    reports.append(_claim(axiom_check(recovered, tol),
                          "conversely the coefficient functional of a range-one aVn is an asymmetric norm",
                          "recovered-q.axioms"))
    return SuiteResult(f"ska: Q(y) = q(y) x on R^{dim}", reports,
                       note=f"q = gauge of {{y : y_i <= 1, -sum y <= 1}}, x = e_1, K = ray through x")


def demo_latt(tol: ToleranceConfig = DEFAULT_TOL, samples: int | None = None, dim: int = DEFAULT_DIM) -> SuiteResult:
    """The positive part of a lattice cone is an aVn with conditions 5, 6 and 7."""
    _need_dim(dim, 1)
    # generator j is e_1 + ... + e_j, the j-th column of the upper triangle of ones
    k = ConeSpec.simplicial(np.triu(np.ones((dim, dim))).T)
    lat = YoudineLattice(k)
    L = lattice_avn(lat)
    reports = _axioms(L, tol, samples, "L.")
    reports.append(_claim(check_isotone(L, tol, samples), "condition 5: x <= y implies x+ <= y+", "L.isotone"))
    reports.append(_claim(check_complement_avn(L, tol, samples),
                          "condition 6: I - L = -(.)^- is an aVn with respect to -K", "I-L.avn"))
    reports.append(_claim(check_proper(L, tol, samples), "condition 7: (I - L)^+ = 0", "L.proper"))
    N = tol.sample_count if samples is None else samples
    Y, _ = sample_unit_ball(dim, SampleState.from_tol(tol, stream=201), N)
    C = complement(L, tol)
    gap = np.linalg.norm(C.map(Y) + lat.neg_part(Y), axis=1)
    reports.append(_close("I-L=-neg", gap, lambda i: [("y", Y[i].copy())], "I - L is minus the negative part", tol))
    return SuiteResult(f"latt: lattice aVn on {k.describe()}", reports,
                       note="generators e_1, e_1 + e_2, ..., e_1 + ... + e_n")


def demo_primitiv(tol: ToleranceConfig = DEFAULT_TOL, samples: int | None = None, dim: int | None = None) -> SuiteResult:
    """``S(u, v) = (0, v+)`` meets every lattice condition except separation."""
    S = primitive_counterexample()
    r = _axioms(S, tol, samples)
    reports = [
        r[0], r[1], r[2],
        expect(check_axiom4(S, tol, samples), FAIL, "axiom4",
               note="axiom 4 fails: S(u, 0) = S(-u, 0) = 0 with u != 0"),
        _claim(check_isotone(S, tol, samples), "condition 5: S is isotone", "isotone"),
        _claim(check_complement_avn(S, tol, samples), "condition 6: I - S is an aVn onto its own range",
               "complement-avn"),
        _claim(check_proper(S, tol, samples), "condition 7: S(I - S) = 0", "proper"),
        _exact("S(1,0)=S(-1,0)=0", np.concatenate([S([1.0, 0.0]), S([-1.0, 0.0])]), np.zeros(4),
               "explicit separation witness (1, 0)", tol),
    ]
    return SuiteResult("primitiv: S(u, v) = (0, v+) on R^2", reports,
                       note="K = {(0, v) : v >= 0}; conditions 1, 2, 3, 5, 6, 7 hold and axiom 4 fails")


def exx_witness(dim: int):
    """``u = (1, ..., 1)``, ``v = (2, 1, ..., 1)`` and the expected ``(I - Q)v``."""
    u = np.ones(dim)
    v = np.ones(dim)
    v[0] = 2.0
    expected = -np.ones(dim)
    expected[0] = 0.0
    return u, v, expected


def demo_exx(tol: ToleranceConfig = DEFAULT_TOL, samples: int | None = None, dim: int = DEFAULT_DIM) -> SuiteResult:
    """``q(y) = max_i y_i^+`` along ``x = (1, ..., 1)``: proper and isotone, with a non-isotone complement."""
    _need_dim(dim, 2)
    q = MaxPositivePart(dim)
    x = np.ones(dim)
    Q = range_one(q, x, tol)
    reports = [
        _claim(properness_condition(q, x, tol, samples), "q(y - q(y) x) = 0 for all y", "q(y-q(y)x)=0"),
        _claim(check_proper(Q, tol, samples), "Q is proper", "Q.proper"),
        _claim(check_isotone(Q, tol, samples), "Q is isotone", "Q.isotone"),
    ]
    N = tol.sample_count if samples is None else samples
    state = SampleState.from_tol(tol, stream=202)
    U, state = sample_unit_ball(dim, state, N)
    t, state = sample_uniform((N,), state, 0.0, 10.0)
    # the identity needs some u_i >= 0: for u < 0 the increment is (max u_i + t)^+ x, shorter than t x
    keep = U.max(axis=1) >= 0.0
    U, t = U[keep], t[keep]
    gap = np.linalg.norm(Q.map(U + t[:, None] * x) - Q.map(U) - t[:, None] * x, axis=1)
    reports.append(_close("Q(u+tx)-Qu=tx", gap, lambda i: [("u", U[i].copy()), ("t", np.array([t[i]]))],
                          "Q(u + t x) - Qu = t x whenever max u_i >= 0", tol))
    C = complement(Q, tol)
    reports.append(_claim(check_proper(C, tol, samples), "since -K lies in K^Q = -R^m_+, I - Q is proper",
                          "I-Q.proper"))
    u, v, expected = exx_witness(dim)
    reports.append(_exact("(I-Q)u=0", C(u), np.zeros(dim), "(I - Q)u = 0", tol))
    reports.append(_exact("(I-Q)v", C(v), expected, "(I - Q)v = (0, -1, ..., -1)", tol))
    iso = check_isotone(C, tol, samples=0, candidates=[(v, u - v)])
    reports.append(expect(iso, FAIL, "I-Q.isotone",
                          note="I - Q is not isotone: u - v lies in K^Q but (I - Q)u - (I - Q)v does not"))
    other = np.ones(dim)
    other[1] = 0.5
    reports.append(expect(properness_condition(q, other, tol, samples), FAIL, "uniqueness-of-x",
                          note=f"x' = {_fmt(other)} has q(x') = 1 but violates q(y - q(y) x') = 0"))
    return SuiteResult(f"exx: Q(y) = max(y_i^+) (1, ..., 1) on R^{dim}", reports,
                       note=f"witness u = {_fmt(u)}, v = {_fmt(v)}")


def demo_nopro(tol: ToleranceConfig = DEFAULT_TOL, samples: int | None = None, dim: int = DEFAULT_DIM) -> SuiteResult:
    """``q(y) = |y+|`` on the orthant gives range-one aVns that are never proper."""
    _need_dim(dim, 2)
    lat = YoudineLattice(ConeSpec.orthant(dim))
    q = HilbertLatticePos(lat)
    x = np.ones(dim) / np.sqrt(dim)
    Q = range_one(q, x, tol)
    reports = _axioms(Q, tol, samples, "Q.")
    y = np.eye(dim)[0]
    gap = float(np.linalg.norm(lat.pos_part(y - x)))
    reports.append(CheckReport("(y-x)+!=0", PASS if gap > tol.membership_tol else FAIL, 1, gap,
                               [("y", y), ("x", x), ("(y-x)+", lat.pos_part(y - x))], tol,
                               "a unit y in K with (y - x)^+ != 0"))
    reports.append(expect(properness_condition(q, x, tol, samples), FAIL, "q(y-q(y)x)!=0",
                          note="q(y - q(y) x) > 0 for a searched y"))
    reports.append(expect(check_proper(Q, tol, samples), FAIL, "Q.not-proper", note="Q(I - Q) != 0"))
    return SuiteResult(f"nopro: Q(y) = |y+| x on R^{dim}", reports,
                       note=f"x = {_fmt(x)}, K = R^{dim}_+")


def demo_cons(tol: ToleranceConfig = DEFAULT_TOL, samples: int | None = None, dim: int | None = None) -> SuiteResult:
    """Suspensions ``(t + g(x))^+ e_1`` are proper, and so are their complements."""
    reports = []
    for label, g in (("abs", absolute_value()), ("max-norm", infinity_gauge(2)), ("max-pos", MaxPositivePart(3))):
        Q = suspension_avn(g, tol)
        e1 = np.eye(g.dim + 1)[0]
        reports += _axioms(Q, tol, samples, f"{label}.Q.")
        reports.append(_claim(properness_condition(SuspensionNorm(g), e1, tol, samples),
                              "q((t, x) - q(t, x) e_1) = 0", f"{label}.q-condition"))
        reports.append(_claim(check_proper(Q, tol, samples), "Q is proper", f"{label}.Q.proper"))
        C = complement(Q, tol)
        reports += _axioms(C, tol, samples, f"{label}.I-Q.")
        reports.append(_claim(check_proper(C, tol, samples),
                              "I - Q is a proper aVn onto {(t, x) : t + g(x) <= 0}", f"{label}.I-Q.proper"))
    return SuiteResult("cons: suspension operators", reports,
                       note="g = |.| on R, max-norm on R^2, max positive part on R^3")


def cube_cone() -> ConeSpec:
    gens = [[-1.0, s1, s2] for s1 in (1.0, -1.0) for s2 in (1.0, -1.0)]
    return ConeSpec.from_generators(gens, label="cone{(-1, +-1, +-1)}")


def demo_exavn(tol: ToleranceConfig = DEFAULT_TOL, samples: int | None = None, dim: int | None = None) -> SuiteResult:
    """A proper aVn with a given proper cone as range and a one-dimensional null cone."""
    k = cube_cone()
    Q = avn_from_proper_cone(k, tol)
    reports = _axioms(Q, tol, samples, "Q.")
    reports.append(_claim(check_proper(Q, tol, samples), "Q = I - R is proper", "Q.proper"))
    y = np.array([0.0, 2.0, 0.0])
    out = Q(y)
    gap = float(np.max(np.abs(out - np.array([-2.0, 2.0, 0.0]))))
    reports.append(CheckReport("Q(0,2,0)", PASS if gap <= tol.abs_tol else FAIL, 1, gap,
                               [("computed", out), ("expected", np.array([-2.0, 2.0, 0.0]))], tol,
                               "Q(0, 2, 0) = (-2, 2, 0) on the boundary t + g(x) = 0"))
    N = tol.sample_count if samples is None else samples
    state = SampleState.from_tol(tol, stream=203)
    M, state = sample_members(k, N, state)
    g_in = np.maximum(gauge_inequality(Q, M), 0.0) / (1.0 + np.linalg.norm(M, axis=1))
    reports.append(_close("members:t+g(x)<=0", g_in, lambda i: [("y", M[i].copy())],
                          "cone members satisfy t + g(x) <= 0 in the rotated frame", tol))
    # converse: frame points with t + g(x) <= 0 are cone members
    X, state = sample_unit_ball(2, state, N)
    s, state = sample_normal((N,), state)
    c = Q.construction
    T = -c.gauge._eval(X) - np.abs(s)
    Z = c.frame.backward(np.column_stack([T, X]))
    reports.append(_close("t+g(x)<=0:members", np.atleast_1d(violation(k, Z)), lambda i: [("y", Z[i].copy())],
                          "points with t + g(x) <= 0 lie in the cone", tol))
    Y, state = sample_unit_ball(3, state, N)
    W = Y - Q.map(Y)
    axis = c.frame.axis
    off = np.linalg.norm(W - np.outer(W @ axis, axis), axis=1) + np.maximum(0.0, -(W @ axis))
    reports.append(_close("K^Q=ray", off, lambda i: [("y", Y[i].copy())],
                          "K^Q = (I - Q)X is the ray through the frame axis", tol))
    return SuiteResult(f"exavn: proper aVn onto {k.describe()}", reports,
                       note=f"frame axis {_fmt(axis)}")


def demo_prop2(tol: ToleranceConfig = DEFAULT_TOL, samples: int | None = None, dim: int | None = None) -> SuiteResult:
    """Convex combinations of comparable proper aVns with distinct null cones are not proper."""
    k = ConeSpec.simplicial([[1.0, 0.0], [-1.0, 2.0]])
    L = lattice_avn(k)
    P = projection_avn(k, tol)
    reports = [
        _claim(check_proper(L, tol, samples), "L is a proper aVn", "L.proper"),
        _claim(check_proper(P, tol, samples), "P is a proper aVn", "P.proper"),
    ]
    N = tol.sample_count if samples is None else samples
    Y, _ = sample_unit_ball(2, SampleState.from_tol(tol, stream=204), N)
    reports.append(_close("L<=P", order_margin(k, L, P, Y), lambda i: [("y", Y[i].copy())],
                          "L <= P pointwise in the cone order", tol))
    w = np.array([-1.0, 0.0])  # in -K, outside the polar cone
    lw, pw = L(w), P(w)
    differ = np.linalg.norm(lw) <= tol.membership_tol < np.linalg.norm(pw)
    reports.append(CheckReport("K^L!=K^P", PASS if differ else FAIL, 1, float(np.linalg.norm(pw)),
                               [("w", w), ("Lw", lw), ("Pw", pw)], tol,
                               "Lw = 0 but Pw != 0, so the null cones differ"))
    for lam in (0.25, 0.5, 0.75):
        S = mix([L, P], [lam, 1.0 - lam], tol)
        reports.append(expect(check_proper(S, tol, samples), FAIL, f"S({lam:g}).not-proper",
                              note=f"S = {lam:g} L + {1 - lam:g} P is not proper"))
    return SuiteResult(f"prop2: mixtures of L and P on {k.describe()}", reports,
                       note="coisotone, not self-dual cone")


def _fmt(v) -> str:
    return "(" + ", ".join(f"{float(c) + 0.0:g}" for c in v) + ")"


def _need_dim(dim: int, least: int) -> None:
    if dim < least:
        raise DimensionMismatch(f"this example needs dimension at least {least}, got {dim}")


DEMOS = {
    "ska": demo_ska,
    "latt": demo_latt,
    "primitiv": demo_primitiv,
    "exx": demo_exx,
    "nopro": demo_nopro,
    "cons": demo_cons,
    "exavn": demo_exavn,
    "prop2": demo_prop2,
}


def run_demo(example_id: str, tol: ToleranceConfig = DEFAULT_TOL, samples: int | None = None,
             dim: int | None = None) -> SuiteResult:
    try:
        fn = DEMOS[example_id]
    except KeyError:
        raise UnknownExample(f"unknown example {example_id!r}; known: {', '.join(DEMOS)}") from None
    if dim is None:
        return fn(tol, samples)
    return fn(tol, samples, dim)


__all__ = ["DEMOS", "cube_cone", "exx_witness", "run_demo"] + [f"demo_{k}" for k in DEMOS]
