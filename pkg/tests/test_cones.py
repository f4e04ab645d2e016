import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from avnorm.cones import (
    ConeSpec,
    OrderRelation,
    dual_cone,
    generator_matrix,
    halfspace_normals,
    interior_point,
    is_coisotone,
    is_full_dimensional,
    is_pointed,
    is_selfdual_simplicial,
    less_equal,
    membership,
    polar_cone,
    same_cone,
    sample_members,
    violation,
)
from avnorm.errors import DimensionMismatch, NotFullDimensional, SingularMatrix, UnsupportedRepresentation
from avnorm.numeric import DEFAULT_TOL, SampleState, sample_unit_ball

from factories import random_coisotone, random_noncoisotone, rotated_orthant

WEDGE = ConeSpec.simplicial([[1.0, 0.0], [1.0, 1.0]])
OBTUSE = ConeSpec.simplicial([[1.0, 0.0], [-1.0, 2.0]])


def test_membership_orthant():
    k = ConeSpec.orthant(2)
    assert membership(k, [1.0, 0.0])
    assert not membership(k, [-1.0, 0.0])


def test_membership_wedge_by_coefficients():
    # (2, 1) = 1 * (1, 0) + 1 * (1, 1)
    assert membership(WEDGE, [2.0, 1.0])
    assert not membership(WEDGE, [0.0, 1.0])


def test_membership_batch_and_dimension():
    out = membership(WEDGE, np.array([[2.0, 1.0], [0.0, 1.0]]))
    np.testing.assert_array_equal(out, [True, False])
    with pytest.raises(DimensionMismatch):
        membership(WEDGE, [1.0, 2.0, 3.0])


def test_membership_tolerance_scales_with_norm():
    k = ConeSpec.orthant(2)
    assert membership(k, [1e6, -5e-3])  # relative violation 5e-9
    assert not membership(k, [1.0, -5e-3])


def test_membership_halfspaces_ray_negated():
    h = ConeSpec.halfspaces([[1.0, 0.0], [0.0, 1.0]])
    assert membership(h, [2.0, 3.0]) and not membership(h, [-1.0, 3.0])
    r = ConeSpec.ray([1.0, 1.0])
    assert membership(r, [2.0, 2.0])
    assert not membership(r, [2.0, 1.0])
    assert not membership(r, [-1.0, -1.0])
    neg = ConeSpec.negated(WEDGE)
    assert membership(neg, [-2.0, -1.0]) and not membership(neg, [2.0, 1.0])


def test_membership_generators_cone():
    cube = ConeSpec.from_generators([[-1, 1, 1], [-1, 1, -1], [-1, -1, 1], [-1, -1, -1]])
    assert membership(cube, [-1.0, 0.0, 0.0])
    assert membership(cube, [-2.0, 2.0, 0.0])
    assert not membership(cube, [-1.0, 2.0, 0.0])
    assert not membership(cube, [1.0, 0.0, 0.0])


def test_order_relation():
    order = OrderRelation(ConeSpec.orthant(2))
    assert order([0.0, 0.0], [1.0, 2.0])
    assert not order([1.0, 2.0], [0.0, 0.0])
    assert less_equal(WEDGE, [0.0, 0.0], [2.0, 1.0])


def test_dual_orthant_is_orthant():
    d = dual_cone(ConeSpec.orthant(2))
    np.testing.assert_allclose(d.generators, np.eye(2))


def test_dual_wedge():
    d = dual_cone(WEDGE)
    np.testing.assert_allclose(d.generators.T, [[1.0, -1.0], [0.0, 1.0]], atol=1e-15)
    # every dual generator is nonnegative on every generator
    assert np.all(d.generators.T @ WEDGE.generators >= -1e-12)


def test_dual_one_dimensional():
    d = dual_cone(ConeSpec.orthant(1))
    assert membership(d, [3.0]) and not membership(d, [-3.0])


def test_dual_halfspaces_gives_generators():
    h = ConeSpec.halfspaces([[1.0, 0.0], [1.0, 1.0]])
    d = dual_cone(h)
    assert d.kind == "generators"
    np.testing.assert_array_equal(d.generators.T, [[1.0, 0.0], [1.0, 1.0]])


def test_dual_of_analytic_unsupported():
    k = ConeSpec.analytic(2, lambda Y: np.zeros(len(Y)))
    with pytest.raises(UnsupportedRepresentation):
        dual_cone(k)


def test_polar_examples():
    p = polar_cone(ConeSpec.orthant(2))
    assert membership(p, [-1.0, -2.0]) and not membership(p, [1.0, 0.0])
    pw = polar_cone(WEDGE)
    np.testing.assert_allclose(pw.generators.T, [[-1.0, 1.0], [0.0, -1.0]], atol=1e-15)


@pytest.mark.parametrize("k", [WEDGE, OBTUSE, ConeSpec.orthant(3)])
def test_polar_involution(k):
    pp = polar_cone(polar_cone(k))
    assert same_cone(k, pp)


def test_dual_involution_random_simplicial():
    rng = np.random.default_rng(5)
    for n in (2, 3, 4):
        k = random_noncoisotone(n, rng)
        assert same_cone(k, dual_cone(dual_cone(k)))


def test_coisotone_examples():
    assert is_coisotone(OBTUSE)
    assert not is_coisotone(WEDGE)
    for m in (1, 2, 5, 16):
        assert is_coisotone(ConeSpec.orthant(m))
        assert is_selfdual_simplicial(ConeSpec.orthant(m))


def test_selfdual_examples():
    assert is_selfdual_simplicial(ConeSpec.orthant(3))
    assert is_selfdual_simplicial(rotated_orthant(3, np.random.default_rng(0)))
    assert not is_selfdual_simplicial(OBTUSE)


def test_coisotone_is_scale_invariant():
    scaled = ConeSpec.simplicial([[3.0, 0.0], [-0.1, 0.2]])
    assert is_coisotone(scaled) and is_coisotone(OBTUSE)


def test_predicates_need_simplicial():
    h = ConeSpec.halfspaces([[1.0, 0.0], [0.0, 1.0]])
    with pytest.raises(UnsupportedRepresentation):
        is_coisotone(h)
    with pytest.raises(UnsupportedRepresentation):
        is_selfdual_simplicial(h)


def test_random_families():
    rng = np.random.default_rng(1)
    for n in (2, 3, 4, 5):
        assert is_coisotone(random_coisotone(n, rng))
        assert not is_coisotone(random_noncoisotone(n, rng))


def test_interior_point_orthant_and_wedge():
    u = interior_point(ConeSpec.orthant(2))
    np.testing.assert_allclose(u, [1.0, 1.0])
    w = interior_point(WEDGE)
    np.testing.assert_allclose(w, np.array([1.0, 0.0]) + np.array([1.0, 1.0]) / np.sqrt(2))
    assert violation(WEDGE, w) == 0.0
    # strictly inside: a small perturbation stays in the cone
    assert membership(WEDGE, w + 1e-3 * np.array([0.0, -1.0]))


def test_interior_point_ray_fails():
    with pytest.raises(NotFullDimensional):
        interior_point(ConeSpec.ray([1.0, 0.0]))


def test_interior_point_halfspaces():
    h = ConeSpec.halfspaces([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
    u = interior_point(h)
    assert np.all(h.normals @ u > 0)


def test_pointedness():
    assert is_pointed(WEDGE)
    assert not is_pointed(ConeSpec.halfspaces([[1.0, 0.0]]))
    assert is_pointed(ConeSpec.halfspaces([[1.0, 0.0], [0.0, 1.0], [-1.0, -1.0]]))
    assert is_pointed(ConeSpec.ray([1.0, 2.0]))
    assert not is_pointed(ConeSpec.from_generators([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]]))


def test_full_dimensional():
    assert is_full_dimensional(WEDGE)
    assert not is_full_dimensional(ConeSpec.ray([1.0, 0.0]))
    assert not is_full_dimensional(ConeSpec.from_generators([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]))


def test_construction_errors():
    with pytest.raises(ValueError):
        ConeSpec.simplicial([[0.0, 0.0], [1.0, 1.0]])
    with pytest.raises(SingularMatrix):
        ConeSpec.simplicial([[1.0, 0.0], [2.0, 0.0]])
    with pytest.raises(SingularMatrix):
        ConeSpec.simplicial([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])


def test_halfspace_normals_two_dimensional():
    c = halfspace_normals(WEDGE)
    g = WEDGE.generators
    assert np.all(c @ g >= -1e-12)
    # each normal is tight on one generator
    assert np.all(np.min(np.abs(c @ g / np.linalg.norm(c, axis=1)[:, None]), axis=1) < 1e-12)


def test_halfspace_normals_cube():
    cube = ConeSpec.from_generators([[-1, 1, 1], [-1, 1, -1], [-1, -1, 1], [-1, -1, -1]])
    c = halfspace_normals(cube)
    assert c.shape == (4, 3)
    unit = c / np.linalg.norm(c, axis=1, keepdims=True)
    expected = np.array([[-1, -1, 0], [-1, 1, 0], [-1, 0, -1], [-1, 0, 1]]) / np.sqrt(2)
    for row in expected:
        assert np.min(np.linalg.norm(unit - row, axis=1)) < 1e-12


def test_generators_of_2d_halfspace_cone():
    h = ConeSpec.halfspaces([[1.0, 0.0], [1.0, 1.0]])
    g = generator_matrix(h)
    k = ConeSpec.from_generators(g.T)
    assert same_cone(h, k)


def test_sample_members_are_members():
    state = SampleState(seed=0)
    for k in (WEDGE, OBTUSE, ConeSpec.ray([1.0, -2.0]), ConeSpec.negated(WEDGE),
              ConeSpec.halfspaces([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 1.0, 1.0]])):
        m, state = sample_members(k, 200, state)
        assert np.all(membership(k, m))


def test_same_cone_detects_difference():
    assert not same_cone(WEDGE, OBTUSE)
    assert same_cone(WEDGE, ConeSpec.from_generators([[2.0, 0.0], [3.0, 3.0]]))


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**31), a=st.floats(0, 10), b=st.floats(0, 10))
def test_convex_cone_closure(seed, a, b):
    rng = np.random.default_rng(seed)
    k = random_noncoisotone(3, rng)
    m, _ = sample_members(k, 2, SampleState(seed=seed))
    assert membership(k, a * m[0] + b * m[1])


def test_violation_is_scale_normalized_and_nonnegative():
    k = ConeSpec.orthant(2)
    y, _ = sample_unit_ball(2, SampleState(seed=1), 100)
    v = violation(k, y)
    assert np.all(v >= 0.0)
    assert not np.any(np.signbit(v))
    assert violation(k, [1.0, 1.0]) == 0.0


def test_describe():
    assert "simplicial" in WEDGE.describe()
    assert ConeSpec.orthant(3).describe() == "R^3_+"
    assert ConeSpec.negated(WEDGE).describe().startswith("-(")


def test_default_tolerance_used():
    assert membership(WEDGE, [1.0, -1e-9], DEFAULT_TOL)
