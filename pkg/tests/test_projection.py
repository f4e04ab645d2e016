import numpy as np
import pytest
from scipy.optimize import lsq_linear

from avnorm.cones import ConeSpec, membership, polar_cone
from avnorm.errors import TooManyGenerators, UnsupportedRepresentation
from avnorm.numeric import DEFAULT_TOL, SampleState, sample_unit_ball
from avnorm.projection import (
    MAX_GENERATORS,
    moreau_check,
    nearest_member_gap,
    project,
    project_batch,
    projection_avn,
)
from avnorm.report import PASS

from factories import random_hrep_proper, random_noncoisotone

WEDGE = ConeSpec.simplicial([[1.0, 0.0], [1.0, 1.0]])
CUBE_GENS = [[-1, 1, 1], [-1, 1, -1], [-1, -1, 1], [-1, -1, -1]]


def nnls_projection(gens: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Independent oracle: bounded-variable least squares on the generator coefficients."""
    res = lsq_linear(gens, x, bounds=(0.0, np.inf), method="bvls", tol=1e-14)
    return gens @ res.x


def test_orthant_examples():
    k = ConeSpec.orthant(2)
    r = project(k, [1.0, -1.0])
    np.testing.assert_array_equal(r.projected, [1.0, 0.0])
    np.testing.assert_array_equal(r.residual, [0.0, -1.0])
    assert r.inner == 0.0
    assert r.active_face == frozenset({0})
    np.testing.assert_array_equal(project(k, [-1.0, -1.0]).projected, [0.0, 0.0])


def test_wedge_example():
    r = project(WEDGE, [0.0, 1.0])
    np.testing.assert_allclose(r.projected, [0.5, 0.5])
    np.testing.assert_allclose(r.residual, [-0.5, 0.5])
    assert abs(r.inner) < 1e-15


def test_nnls_oracle_random_cones():
    rng = np.random.default_rng(0)
    for n in (2, 3, 4, 5):
        for _ in range(5):
            k = random_noncoisotone(n, rng)
            X = rng.normal(size=(50, n)) * 3
            P = project_batch(k, X)
            for x, p in zip(X, P):
                np.testing.assert_allclose(p, nnls_projection(k.generators, x), atol=1e-9 * (1 + np.linalg.norm(x)))


def test_optimality_conditions():
    rng = np.random.default_rng(1)
    k = random_noncoisotone(4, rng)
    X = rng.normal(size=(200, 4))
    P = project_batch(k, X)
    R = X - P
    assert np.all(membership(k, P))
    assert np.all(membership(polar_cone(k), R))
    assert np.abs(np.einsum("ij,ij->i", P, R)).max() < 1e-12


def test_nonexpansive():
    X, s = sample_unit_ball(3, SampleState(seed=4), 300)
    Y, _ = sample_unit_ball(3, s, 300)
    k = ConeSpec.from_generators(CUBE_GENS)
    d = np.linalg.norm(project_batch(k, X) - project_batch(k, Y), axis=1)
    assert np.all(d <= np.linalg.norm(X - Y, axis=1) + 1e-12)


def test_moreau_decomposition():
    X, _ = sample_unit_ball(3, SampleState(seed=5), 500)
    for k in (ConeSpec.orthant(3), ConeSpec.from_generators(CUBE_GENS),
              random_hrep_proper(3, np.random.default_rng(6))):
        assert moreau_check(k, X).verdict == PASS


def test_halfspace_and_generator_forms_agree():
    gens = ConeSpec.from_generators(CUBE_GENS)
    normals = np.array([[-1, -1, 0], [-1, 1, 0], [-1, 0, -1], [-1, 0, 1]], dtype=float)
    hrep = ConeSpec.halfspaces(normals)
    X, _ = sample_unit_ball(3, SampleState(seed=7), 400)
    np.testing.assert_allclose(project_batch(gens, X), project_batch(hrep, X), atol=1e-12)


def test_negated_and_ray():
    neg = ConeSpec.negated(WEDGE)
    np.testing.assert_allclose(project(neg, [0.0, -1.0]).projected, [-0.5, -0.5])
    ray = ConeSpec.ray([1.0, 1.0])
    np.testing.assert_allclose(project(ray, [2.0, 0.0]).projected, [1.0, 1.0])


def test_nearest_member_gap_nonpositive():
    rng = np.random.default_rng(8)
    k = random_noncoisotone(3, rng)
    X = rng.normal(size=(30, 3))
    cand = rng.uniform(0, 2, size=(30, 100, 3)) @ k.generators.T
    assert np.all(nearest_member_gap(k, X, cand) <= 1e-12)


def test_too_many_generators():
    t = np.linspace(0, np.pi / 2, MAX_GENERATORS + 1)
    gens = np.column_stack([np.cos(t), np.sin(t), np.ones_like(t)])
    with pytest.raises(TooManyGenerators):
        project(ConeSpec.from_generators(gens), [1.0, 0.0, 0.0])


def test_analytic_cone_unsupported():
    k = ConeSpec.analytic(2, lambda Y: np.zeros(len(Y)))
    with pytest.raises(UnsupportedRepresentation):
        projection_avn(k)


def test_projection_avn():
    op = projection_avn(WEDGE, DEFAULT_TOL)
    assert "proper" in op.claimed_properties
    np.testing.assert_allclose(op([0.0, 1.0]), [0.5, 0.5])
