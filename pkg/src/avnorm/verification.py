"""Sampled property checks for asymmetric vector norm operators.

Every check draws its samples from a dedicated deterministic stream derived
from ``tol.seed``, so reports are reproducible bit for bit. Universally
quantified properties can only be falsified by sampling: a Pass means no
violation above ``membership_tol`` was found in the stated budget.

Margins are violations normalized by ``1 + |input|``; the worst margin of a
failing report is the margin of its first witness.
"""

from __future__ import annotations

import time

import numpy as np

from .avn import AvnOperator, Mix
from .cones import (
    ConeSpec,
    is_coisotone,
    is_selfdual_simplicial,
    polar_cone,
    sample_members,
    violation,
)
from .constructions import complement, mix
from .errors import NotProper, UnsupportedRepresentation
from .lattice import lattice_avn
from .numeric import DEFAULT_TOL, SampleState, ToleranceConfig, sample_unit_ball, sample_unit_sphere
from .projection import projection_avn
from .report import FAIL, INCONCLUSIVE, PASS, CheckReport, SuiteResult, expect
from .search import refine_minimum

HOMOGENEITY_FACTORS = (0.0, 0.5, 1.0, 2.0, 10.0)
AXIOM4_MIN_NORM = 0.1


def _norm(Y):
    return np.linalg.norm(Y, axis=1)


def _report(name, margins, witnesses, samples, tol, t0, note="", pass_note=""):
    """Build a report from a 1-D margin array and per-sample witness rows."""
    i = int(np.argmax(margins))
    worst = float(margins[i])
    if worst > tol.membership_tol:
        return CheckReport(name, FAIL, samples, worst, witnesses(i), tol, note, time.perf_counter() - t0)
    return CheckReport(name, PASS, samples, worst, [], tol, pass_note, time.perf_counter() - t0)


def _count(tol, samples):
    return tol.sample_count if samples is None else int(samples)


# -- individual checks -------------------------------------------------------


def check_retraction(op: AvnOperator, tol: ToleranceConfig = DEFAULT_TOL, samples: int | None = None) -> CheckReport:
    """Idempotence, range membership and fixed points on sampled range members."""
    t0 = time.perf_counter()
    N = _count(tol, samples)
    state = SampleState.from_tol(tol, stream=101)
    Y, state = sample_unit_ball(op.dim, state, N)
    QY = op.map(Y)
    idem = _norm(op.map(QY) - QY) / (1.0 + _norm(Y))
    rng = np.asarray(violation(op.cone_range, QY))
    rows = [Y, Y]
    parts = [idem, rng]
    labels = ["idempotence", "range"]
    note = ""
    try:
        M, state = sample_members(op.cone_range, N, state)
        parts.append(_norm(op.map(M) - M) / (1.0 + _norm(M)))
        rows.append(M)
        labels.append("fixed-point")
    except UnsupportedRepresentation:
        note = "no member sampler for the cone range; fixed points not sampled"
    margins = np.concatenate(parts)

    def witnesses(i):
        block, j = divmod(i, N)
        return [(f"{labels[block]}.y", rows[block][j].copy())]

    return _report("retraction", margins, witnesses, len(margins), tol, t0, note, pass_note=note)


def check_homogeneity(op: AvnOperator, tol: ToleranceConfig = DEFAULT_TOL, samples: int | None = None) -> CheckReport:
    t0 = time.perf_counter()
    N = _count(tol, samples)
    state = SampleState.from_tol(tol, stream=102)
    Y, state = sample_unit_ball(op.dim, state, N)
    QY = op.map(Y)
    parts = []
    for t in HOMOGENEITY_FACTORS:
        parts.append(_norm(op.map(t * Y) - t * QY) / (1.0 + t * _norm(Y)))
    margins = np.concatenate(parts)

    def witnesses(i):
        block, j = divmod(i, N)
        return [("y", Y[j].copy()), ("t", np.array([HOMOGENEITY_FACTORS[block]]))]

    return _report("homogeneity", margins, witnesses, len(margins), tol, t0)


def subadditivity_margin(op: AvnOperator, X, Y) -> np.ndarray:
    """Violation of ``Qx + Qy - Q(x + y) in K`` for paired rows."""
    d = op.map(X) + op.map(Y) - op.map(X + Y)
    return np.atleast_1d(violation(op.cone_range, d))


def check_subadditive(op: AvnOperator, tol: ToleranceConfig = DEFAULT_TOL, samples: int | None = None) -> CheckReport:
    """Sampled pairs, then a step-halving local search around the worst pair."""
    t0 = time.perf_counter()
    N = _count(tol, samples)
    n = op.dim
    state = SampleState.from_tol(tol, stream=103)
    X, state = sample_unit_ball(n, state, N)
    Y, state = sample_unit_ball(n, state, N)
    m = subadditivity_margin(op, X, Y)
    i = int(np.argmax(m))

    def neg(Z):
        return -subadditivity_margin(op, Z[:, :n], Z[:, n:])

    z, val, state = refine_minimum(neg, np.concatenate([X[i], Y[i]]), state, rounds=40, step=0.2)
    refined = -val
    if refined > m[i]:
        wx, wy, worst = z[:n], z[n:], refined
    else:
        wx, wy, worst = X[i], Y[i], float(m[i])
    used = N + 40 * 8
    if worst > tol.membership_tol:
        return CheckReport("subadditivity", FAIL, used, worst, [("x", wx.copy()), ("y", wy.copy())], tol,
                           "Qx + Qy - Q(x + y) leaves the cone range", time.perf_counter() - t0)
    return CheckReport("subadditivity", PASS, used, worst, [], tol,
                       f"no violation in {N} sampled pairs plus local refinement", time.perf_counter() - t0)


def check_axiom4(op: AvnOperator, tol: ToleranceConfig = DEFAULT_TOL, samples: int | None = None) -> CheckReport:
    """Search the unit sphere for ``y`` with ``Qy`` and ``Q(-y)`` both numerically zero.

    Coordinate axes are probed first, then random directions, then a local
    search from the best candidate. The reported margin is the smallest
    ``max(|Qy|, |Q(-y)|)`` found; Fail when it is at most ``membership_tol``.
    """
    t0 = time.perf_counter()
    N = _count(tol, samples)
    n = op.dim
    state = SampleState.from_tol(tol, stream=104)
    S, state = sample_unit_sphere(n, state, N)
    cand = np.vstack([np.eye(n), -np.eye(n), S])

    def both(Z):
        return np.maximum(_norm(op.map(Z)), _norm(op.map(-Z)))

    vals = both(cand)
    i = int(np.argmin(vals))
    y, val, state = refine_minimum(both, cand[i], state, sphere=True)
    if vals[i] <= val:
        y, val = cand[i], float(vals[i])
    used = len(cand) + 60 * 8
    if val <= tol.membership_tol and np.linalg.norm(y) >= AXIOM4_MIN_NORM:
        return CheckReport("axiom4", FAIL, used, val, [("y", y.copy())], tol,
                           "Qy = Q(-y) = 0 for a nonzero y", time.perf_counter() - t0)
    return CheckReport("axiom4", PASS, used, val, [], tol,
                       f"no witness found in {used} sphere points (sampled search, not a proof)",
                       time.perf_counter() - t0)


def check_proper(op: AvnOperator, tol: ToleranceConfig = DEFAULT_TOL, samples: int | None = None) -> CheckReport:
    """Sampled ``Q(y - Qy) = 0``."""
    t0 = time.perf_counter()
    N = _count(tol, samples)
    state = SampleState.from_tol(tol, stream=105)
    Y, state = sample_unit_ball(op.dim, state, N)

    def margin(Z):
        return _norm(op.map(Z - op.map(Z))) / (1.0 + _norm(Z))

    m = margin(Y)
    i = int(np.argmax(m))
    y, val, state = refine_minimum(lambda Z: -margin(Z), Y[i], state, rounds=30, step=0.2)
    worst, wy = (-val, y) if -val > m[i] else (float(m[i]), Y[i])
    used = N + 30 * 8
    if worst > tol.membership_tol:
        return CheckReport("proper", FAIL, used, worst, [("y", wy.copy())], tol,
                           "Q(y - Qy) != 0", time.perf_counter() - t0)
    return CheckReport("proper", PASS, used, worst, [], tol, "", time.perf_counter() - t0)


def check_isotone(op: AvnOperator, tol: ToleranceConfig = DEFAULT_TOL, samples: int | None = None,
                  candidates=None) -> CheckReport:
    """``Q(x + k) - Qx`` in the cone range for sampled ``x`` and cone members ``k``.

    ``candidates`` is an optional list of explicit ``(x, k)`` pairs checked
    before the random ones; with ``samples=0`` only the candidates are used.
    """
    t0 = time.perf_counter()
    N = _count(tol, samples)
    state = SampleState.from_tol(tol, stream=106)
    X, state = sample_unit_ball(op.dim, state, N)
    K, state = sample_members(op.cone_range, N, state)
    if candidates:
        cx = np.array([np.asarray(c[0], dtype=np.float64) for c in candidates])
        ck = np.array([np.asarray(c[1], dtype=np.float64) for c in candidates])
        X = np.vstack([cx, X])
        K = np.vstack([ck, K])
    D = op.map(X + K) - op.map(X)
    m = np.atleast_1d(violation(op.cone_range, D))

    def witnesses(i):
        return [("x", X[i].copy()), ("k", K[i].copy())]

    note = "Q(x + k) - Qx leaves the cone range"
    return _report("isotone", m, witnesses, len(m), tol, t0, note=note, pass_note="")


def check_complement_avn(op: AvnOperator, tol: ToleranceConfig = DEFAULT_TOL, samples: int | None = None) -> CheckReport:
    """``I - Q`` is itself an aVn with respect to its own cone range."""
    t0 = time.perf_counter()
    try:
        comp = complement(op, tol)
    except NotProper:
        rep = check_proper(op, tol, samples)
        return CheckReport("complement-avn", FAIL, rep.samples_used, rep.worst_margin, rep.witnesses, tol,
                           "Q is not proper, so I - Q is not a retraction onto K^Q", time.perf_counter() - t0)
    parts = [check_retraction(comp, tol, samples), check_homogeneity(comp, tol, samples),
             check_subadditive(comp, tol, samples), check_axiom4(comp, tol, samples)]
    failed = [r for r in parts if r.verdict == FAIL]
    used = sum(r.samples_used for r in parts)
    worst = max(r.worst_margin for r in parts[:3])
    if failed:
        wit = [(f"{r.check_name}.{label}", v) for r in failed for label, v in r.witnesses]
        return CheckReport("complement-avn", FAIL, used, max(r.worst_margin for r in failed), wit, tol,
                           "I - Q fails: " + ", ".join(r.check_name for r in failed), time.perf_counter() - t0)
    return CheckReport("complement-avn", PASS, used, worst, [], tol,
                       "I - Q passes retraction, homogeneity, subadditivity and axiom4", time.perf_counter() - t0)


# -- suites ------------------------------------------------------------------


def suite_properties(op: AvnOperator, extra=()) -> list[str]:
    """Optional properties a suite tests: the claims, anything requested, and
    properness for convex combinations, where it is the open question."""
    props = set(op.claimed_properties) | set(extra)
    if isinstance(op.construction, Mix):
        props.add("proper")
    return [p for p in ("proper", "isotone", "lattice") if p in props]


def run_axiom_suite(op: AvnOperator, tol: ToleranceConfig = DEFAULT_TOL, extra=(), samples: int | None = None) -> SuiteResult:
    reports = [
        check_retraction(op, tol, samples),
        check_homogeneity(op, tol, samples),
        check_subadditive(op, tol, samples),
        check_axiom4(op, tol, samples),
    ]
    for prop in suite_properties(op, extra):
        if prop == "proper":
            reports.append(check_proper(op, tol, samples))
        elif prop == "isotone":
            reports.append(check_isotone(op, tol, samples))
        elif prop == "lattice":
            reports.append(check_complement_avn(op, tol, samples))
    return SuiteResult(f"axioms: {op.describe()}", reports)


def _prefixed(prefix: str, suite: SuiteResult) -> list[CheckReport]:
    out = []
    for r in suite.reports:
        out.append(CheckReport(f"{prefix}.{r.check_name}", r.verdict, r.samples_used, r.worst_margin,
                               r.witnesses, r.tolerance, r.note, r.wall_time))
    return out


def theorem_fooo_suite(k: ConeSpec, tol: ToleranceConfig = DEFAULT_TOL, samples: int | None = None) -> SuiteResult:
    """Agreement between coisotonicity of ``k`` and the projection being a proper aVn."""
    coiso = is_coisotone(k, tol)
    P = projection_avn(k, tol)
    sub = check_subadditive(P, tol, samples)
    prop = check_proper(P, tol, samples)
    reports = [expect(prop, PASS, "projection.proper")]
    if coiso:
        reports.append(expect(sub, PASS, "projection.subadditive"))
        reports.append(expect(check_isotone(complement(P, tol), tol, samples), PASS, "complement.isotone"))
    else:
        reports.append(expect(sub, FAIL, "projection.subadditivity-violated",
                              note="cone is not coisotone, so a subadditivity witness must exist"
                              if sub.verdict == FAIL else "no witness found; result inconclusive"))
    return SuiteResult(f"coisotone-projection agreement on {k.describe()}", reports,
                       note=f"coisotone: {coiso}")


def _pointwise_gap(a: AvnOperator, b: AvnOperator, Y) -> np.ndarray:
    return _norm(a.map(Y) - b.map(Y)) / (1.0 + _norm(Y))


def _equal_report(name, a, b, tol, samples, expect_equal: bool) -> CheckReport:
    t0 = time.perf_counter()
    N = _count(tol, samples)
    state = SampleState.from_tol(tol, stream=107)
    Y, state = sample_unit_ball(a.dim, state, N)
    gap = _pointwise_gap(a, b, Y)
    i = int(np.argmax(gap))
    worst = float(gap[i])
    found = worst > tol.membership_tol
    if expect_equal:
        verdict = FAIL if found else PASS
        wit = [("y", Y[i].copy())] if found else []
        return CheckReport(name, verdict, N, worst, wit, tol, "max |Ay - By| / (1 + |y|)", time.perf_counter() - t0)
    verdict = PASS if found else INCONCLUSIVE
    wit = [("y", Y[i].copy())] if found else []
    return CheckReport(name, verdict, N, worst, wit, tol, "pointwise discrepancy expected", time.perf_counter() - t0)


def order_margin(k: ConeSpec, lower: AvnOperator, upper: AvnOperator, Y) -> np.ndarray:
    """Violation of ``lower(y) <=_K upper(y)``."""
    return np.atleast_1d(violation(k, upper.map(Y) - lower.map(Y)))


def _null_cones_differ(k: ConeSpec, tol, samples) -> CheckReport:
    """Witness that ``-K`` (null cone of L) and the polar (null cone of P) differ."""
    t0 = time.perf_counter()
    N = _count(tol, samples)
    state = SampleState.from_tol(tol, stream=108)
    polar = polar_cone(k)
    neg = ConeSpec.negated(k)
    A, state = sample_members(polar, N, state)
    B, state = sample_members(neg, N, state)
    va = np.atleast_1d(violation(neg, A))
    vb = np.atleast_1d(violation(polar, B))
    m = np.concatenate([va, vb])
    rows = np.vstack([A, B])
    i = int(np.argmax(m))
    if m[i] > tol.membership_tol:
        label = "polar-member-outside-negative-cone" if i < N else "negative-cone-member-outside-polar"
        return CheckReport("null-cones-differ", PASS, 2 * N, float(m[i]), [(label, rows[i].copy())], tol,
                           "K^L = -K differs from K^P = polar", time.perf_counter() - t0)
    return CheckReport("null-cones-differ", INCONCLUSIVE, 2 * N, float(m[i]), [], tol,
                       "no membership discrepancy found", time.perf_counter() - t0)


def theorem_hlatt_suite(k: ConeSpec, tol: ToleranceConfig = DEFAULT_TOL, samples: int | None = None,
                        mix_weight: float = 0.5) -> SuiteResult:
    """Self-dual branch: ``P = L`` and both ``P`` and ``I - P`` are proper aVns.

    Coisotone, not self-dual branch: ``L <=_K P`` pointwise, the null cones of
    ``L`` and ``P`` differ, and their convex combination is not proper.
    Otherwise: ``P`` and ``L`` must differ somewhere.
    """
    P = projection_avn(k, tol)
    L = lattice_avn(k)
    reports: list[CheckReport] = []
    if is_selfdual_simplicial(k, tol):
        branch = "self-dual"
        reports.append(_equal_report("P=L", P, L, tol, samples, expect_equal=True))
        reports += _prefixed("P", run_axiom_suite(P, tol, extra=("proper", "isotone"), samples=samples))
        reports += _prefixed("I-P", run_axiom_suite(complement(P, tol), tol, extra=("proper",), samples=samples))
    elif is_coisotone(k, tol):
        branch = "coisotone, not self-dual"
        t0 = time.perf_counter()
        N = _count(tol, samples)
        Y, _ = sample_unit_ball(k.dim, SampleState.from_tol(tol, stream=109), N)
        om = order_margin(k, L, P, Y)
        reports.append(_report("L<=P", om, lambda i: [("y", Y[i].copy())], N, tol, t0))
        reports.append(_null_cones_differ(k, tol, samples))
        S = mix([L, P], [mix_weight, 1.0 - mix_weight], tol)
        reports.append(expect(check_proper(S, tol, samples), FAIL, "mix.not-proper"))
    else:
        branch = "not coisotone"
        reports.append(_equal_report("P!=L", P, L, tol, samples, expect_equal=False))
    return SuiteResult(f"self-dual lattice suite on {k.describe()}", reports, note=f"branch: {branch}")


def theorem_foo_check(op: AvnOperator, tol: ToleranceConfig = DEFAULT_TOL, samples: int | None = None) -> CheckReport:
    """Compare ``K^Q`` with ``-K`` and, when they agree, ``Q`` with the lattice aVn.

    Pass means the two sides agree: either the null cone is ``-K`` and ``Q``
    coincides with the positive part, or the null cone differs from ``-K``
    (witnessed). A Fail is a genuine disagreement.
    """
    t0 = time.perf_counter()
    if not check_proper(op, tol, samples).passed:
        raise NotProper(f"{op.describe()} is not proper")
    N = _count(tol, samples)
    state = SampleState.from_tol(tol, stream=110)
    k = op.cone_range
    neg = ConeSpec.negated(k)
    Y, state = sample_unit_ball(op.dim, state, N)
    null_members = Y - op.map(Y)  # (I - Q)X = K^Q for proper Q
    v1 = np.atleast_1d(violation(neg, null_members))
    M, state = sample_members(k, N, state)
    v2 = _norm(op.map(-M)) / (1.0 + _norm(M))
    m = np.concatenate([v1, v2])
    i = int(np.argmax(m))
    if m[i] > tol.membership_tol:
        label = "null-member-outside-negative-cone" if i < N else "negative-cone-member-not-null"
        row = null_members[i] if i < N else -M[i - N]
        return CheckReport("null-cone-vs-negative-cone", PASS, 2 * N, float(m[i]), [(label, row.copy())], tol,
                           "K^Q differs from -K, so Q is not the lattice aVn", time.perf_counter() - t0)
    if k.kind != "simplicial":
        return CheckReport("null-cone-vs-negative-cone", FAIL, 2 * N, float(m[i]), [("y", Y[0].copy())], tol,
                           "K^Q = -K on samples but the cone range is not a lattice cone", time.perf_counter() - t0)
    rep = _equal_report("Q=L", op, lattice_avn(k), tol, samples, expect_equal=True)
    note = "K^Q = -K on samples; " + ("Q coincides with the lattice aVn" if rep.passed else "Q differs from the lattice aVn")
    return CheckReport("null-cone-vs-negative-cone", rep.verdict, 2 * N + rep.samples_used, rep.worst_margin,
                       rep.witnesses, tol, note, time.perf_counter() - t0)


__all__ = [
    "check_axiom4",
    "check_complement_avn",
    "check_homogeneity",
    "check_isotone",
    "check_proper",
    "check_retraction",
    "check_subadditive",
    "order_margin",
    "run_axiom_suite",
    "subadditivity_margin",
    "suite_properties",
    "theorem_foo_check",
    "theorem_fooo_suite",
    "theorem_hlatt_suite",
]
