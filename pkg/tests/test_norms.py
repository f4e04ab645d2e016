from dataclasses import dataclass

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from avnorm.cones import ConeSpec
from avnorm.errors import BoundednessViolation, DimensionMismatch, NormalizationError
from avnorm.lattice import YoudineLattice
from avnorm.norms import (
    AsymmetricNorm,
    GaugeH,
    HilbertLatticePos,
    MaxPositivePart,
    Suspension,
    absolute_value,
    axiom_check,
    dimension_check,
    evaluate,
    infinity_gauge,
    positively_spanning,
    properness_condition,
)
from avnorm.numeric import DEFAULT_TOL
from avnorm.report import FAIL, PASS

SIMPLEX_GAUGE = GaugeH(np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, -1.0]]))

vec3 = arrays(np.float64, (3,), elements=st.floats(-50, 50))


@dataclass(frozen=True, eq=False)
class _Squared(AsymmetricNorm):
    """Not homogeneous: a negative control for the axiom checker."""

    dim: int
    kind = "squared"

    def _eval(self, Y):
        return (Y**2).sum(axis=1)


@dataclass(frozen=True, eq=False)
class _FirstPositive(AsymmetricNorm):
    """Vanishes on the second axis in both directions: violates separation."""

    dim: int = 2
    kind = "first-positive"

    def _eval(self, Y):
        return np.maximum(Y[:, 0], 0.0)


def bisection_gauge(a: np.ndarray, x: np.ndarray) -> float:
    """Minkowski gauge ``inf{lam > 0 : x / lam in D}`` by bisection on membership in D."""
    inside = lambda lam: np.all(a @ (x / lam) <= 1.0)  # noqa: E731
    lo, hi = 0.0, 1.0
    while not inside(hi):
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == 0.0 or inside(mid):
            hi = mid
        else:
            lo = mid
    return hi if np.any(x) else 0.0


def test_max_positive_part_examples():
    q = MaxPositivePart(3)
    assert q([1.0, -2.0, 0.5]) == 1.0
    assert q([-1.0, -2.0, -3.0]) == 0.0
    np.testing.assert_array_equal(q(np.array([[2.0, 0, 0], [-1.0, -1, -1]])), [2.0, 0.0])


def test_absolute_value_and_infinity_gauge():
    q = absolute_value()
    assert q([-3.0]) == 3.0 and q([2.0]) == 2.0
    assert infinity_gauge(3)([1.0, -4.0, 2.0]) == 4.0
    assert evaluate(q, [5.0]) == 5.0


def test_suspension_examples():
    q = Suspension(absolute_value())
    assert q.dim == 2
    assert q([1.0, -2.0]) == 3.0
    assert q([-3.0, 2.0]) == 0.0


def test_lattice_norm():
    lat = YoudineLattice(ConeSpec.simplicial([[1.0, 0.0], [1.0, 1.0]]))
    q = HilbertLatticePos(lat)
    # positive part of (0, 1) is (1, 1)
    assert q([0.0, 1.0]) == pytest.approx(np.sqrt(2.0))
    assert q([-1.0, -1.0]) == 0.0


@pytest.mark.parametrize("seed", range(5))
def test_gauge_matches_bisection(seed):
    rng = np.random.default_rng(seed)
    a = np.vstack([np.eye(3), -np.ones((1, 3)), rng.normal(size=(3, 3))])
    q = GaugeH(a)
    for x in rng.normal(size=(20, 3)):
        assert q(x) == pytest.approx(bisection_gauge(a, x), rel=1e-12, abs=1e-12)


def test_gauge_is_one_on_boundary():
    rng = np.random.default_rng(3)
    a = SIMPLEX_GAUGE.facets
    for d in rng.normal(size=(50, 2)):
        lam = SIMPLEX_GAUGE(d)
        assert np.max(a @ (d / lam)) == pytest.approx(1.0)


def test_unbounded_gauge_rejected():
    with pytest.raises(BoundednessViolation):
        GaugeH(np.array([[1.0, 0.0], [0.0, 1.0]]))
    with pytest.raises(BoundednessViolation):
        GaugeH(np.array([[1.0, 0.0], [-1.0, 0.0]]))
    assert positively_spanning(SIMPLEX_GAUGE.facets)


def test_gauge_rejects_empty_or_nonfinite():
    with pytest.raises(ValueError):
        GaugeH(np.zeros((0, 2)))
    with pytest.raises(ValueError):
        GaugeH(np.array([[np.inf, 0.0], [-1.0, 0.0]]))


@pytest.mark.parametrize("q", [MaxPositivePart(3), SIMPLEX_GAUGE, infinity_gauge(2),
                               Suspension(absolute_value()), Suspension(infinity_gauge(2))])
def test_axioms_hold(q):
    assert axiom_check(q).verdict == PASS


def test_axioms_negative_controls():
    r = axiom_check(_Squared(2))
    assert r.verdict == FAIL and "homogeneity" in r.note
    r = axiom_check(_FirstPositive())
    assert r.verdict == FAIL and "separation" in r.note


@settings(max_examples=100, deadline=None)
@given(x=vec3, y=vec3, t=st.floats(0, 100))
def test_homogeneity_and_subadditivity(x, y, t):
    for q in (MaxPositivePart(3), infinity_gauge(3), Suspension(infinity_gauge(2))):
        scale = 1.0 + np.abs(x).max() + np.abs(y).max()
        assert q(t * x) == pytest.approx(t * q(x), abs=1e-9 * (1 + t) * scale)
        assert q(x + y) <= q(x) + q(y) + 1e-9 * scale


def test_q_of_zero():
    for q in (MaxPositivePart(2), SIMPLEX_GAUGE, Suspension(absolute_value())):
        assert q(np.zeros(q.dim)) == 0.0


def test_properness_condition_examples():
    assert properness_condition(MaxPositivePart(2), [1.0, 1.0]).verdict == PASS
    assert properness_condition(MaxPositivePart(2), [1.0, 0.0]).verdict == FAIL
    # |y - |y|| = 2 at y = -1
    assert properness_condition(absolute_value(), [1.0]).verdict == FAIL
    assert properness_condition(Suspension(absolute_value()), [1.0, 0.0]).verdict == PASS


def test_properness_condition_needs_normalized_x():
    with pytest.raises(NormalizationError):
        properness_condition(MaxPositivePart(2), [2.0, 2.0])


def test_dimension_check():
    dimension_check(MaxPositivePart(2), 2)
    with pytest.raises(DimensionMismatch):
        dimension_check(MaxPositivePart(2), 3)
    with pytest.raises(DimensionMismatch):
        MaxPositivePart(2)([1.0, 2.0, 3.0])


def test_axiom_check_deterministic():
    a = axiom_check(SIMPLEX_GAUGE, DEFAULT_TOL)
    b = axiom_check(SIMPLEX_GAUGE, DEFAULT_TOL)
    assert a.to_dict() == b.to_dict()
