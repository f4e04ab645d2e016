"""Metric projection onto polyhedral cones by exhaustive face enumeration.

For a cone generated by ``g_1, ..., g_m`` every subset ``F`` of generators
spans a candidate face. The projection of ``x`` is the least-squares fit of
``x`` on the first face (ordered by size, then lexicographically) whose fit
has nonnegative coefficients and whose residual lies in the polar cone,
that is ``<x - Px, g_i> <= 0`` for all ``i``. Faces are precomputed once
per cone and evaluated over whole batches of points.
"""

from __future__ import annotations

import itertools
import weakref
from dataclasses import dataclass

import numpy as np

from .avn import AvnOperator, Projection
from .cones import ConeSpec, polar_cone
from .errors import TooManyGenerators, UnsupportedRepresentation
from .numeric import DEFAULT_TOL, ToleranceConfig, as_batch, as_vec, matrix_rank
from .report import FAIL, PASS, CheckReport

MAX_GENERATORS = 16

_FACE_CACHE: "weakref.WeakKeyDictionary[ConeSpec, list]" = weakref.WeakKeyDictionary()
_POLAR_CACHE: "weakref.WeakKeyDictionary[ConeSpec, ConeSpec]" = weakref.WeakKeyDictionary()


@dataclass(frozen=True)
class ProjectionResult:
    projected: np.ndarray
    residual: np.ndarray
    inner: float
    active_face: frozenset


def _face_table(k: ConeSpec) -> list:
    table = _FACE_CACHE.get(k)
    if table is not None:
        return table
    g = k.unit_generators
    n, m = g.shape
    if m > MAX_GENERATORS:
        raise TooManyGenerators(f"{m} generators; face enumeration is capped at {MAX_GENERATORS}")
    table = []
    for size in range(0, min(m, n) + 1):
        for face in itertools.combinations(range(m), size):
            if size == 0:
                table.append((face, None, None))
                continue
            gf = g[:, face]
            if matrix_rank(gf, tol=1e-12) < size:
                continue
            table.append((face, gf, np.linalg.pinv(gf)))
    _FACE_CACHE[k] = table
    return table


def _project_generated(k: ConeSpec, X: np.ndarray, tol: ToleranceConfig):
    g = k.unit_generators
    table = _face_table(k)
    N = X.shape[0]
    scale = 1.0 + np.linalg.norm(X, axis=1)
    out = np.zeros_like(X)
    faces = np.full(N, -1, dtype=np.int64)
    best_err = np.full(N, np.inf)
    best_out = np.zeros_like(X)
    best_face = np.zeros(N, dtype=np.int64)
    pending = np.arange(N)
    for fi, (face, gf, pinv) in enumerate(table):
        Xp = X[pending]
        if gf is None:
            coef_viol = np.zeros(len(pending))
            P = np.zeros_like(Xp)
        else:
            coef = Xp @ pinv.T
            coef_viol = np.maximum(0.0, -coef.min(axis=1))
            P = coef @ gf.T
        dual_viol = np.maximum(0.0, ((Xp - P) @ g).max(axis=1))
        err = np.maximum(coef_viol, dual_viol) / scale[pending]
        ok = err <= tol.abs_tol
        acc = pending[ok]
        out[acc] = P[ok]
        faces[acc] = fi
        better = (~ok) & (err < best_err[pending])
        rows = pending[better]
        best_err[rows] = err[better]
        best_out[rows] = P[better]
        best_face[rows] = fi
        pending = pending[~ok]
        if pending.size == 0:
            break
    if pending.size:
        # round-off left no exact candidate: fall back to the least-violating face
        out[pending] = best_out[pending]
        faces[pending] = best_face[pending]
    return out, [table[i][0] for i in faces]


def _project(k: ConeSpec, X: np.ndarray, tol: ToleranceConfig):
    if k.kind in ("simplicial", "generators", "ray"):
        return _project_generated(k, X, tol)
    if k.kind == "halfspaces":
        # P_K = I - P_{K°}, and K° is generated by the negated normals
        polar = _POLAR_CACHE.get(k)
        if polar is None:
            polar = _POLAR_CACHE[k] = polar_cone(k)
        Pp, faces = _project_generated(polar, X, tol)
        return X - Pp, faces
    if k.kind == "negated":
        P, faces = _project(k.base, -X, tol)
        return -P, faces
    raise UnsupportedRepresentation(f"projection onto a {k.kind} cone is not supported")


def project_batch(k: ConeSpec, X, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Project each row of ``X`` onto ``k``."""
    X, single = as_batch(X, k.dim)
    P, _ = _project(k, X, tol)
    return P[0] if single else P


def project(k: ConeSpec, x, tol: ToleranceConfig = DEFAULT_TOL) -> ProjectionResult:
    """Nearest point of ``k`` to ``x`` with its Moreau residual.

    ``active_face`` holds indices of the generators spanning the accepted
    face. For halfspace cones it indexes the normals active in the polar
    projection instead.
    """
    x = as_vec(x, k.dim)
    P, faces = _project(k, x.reshape(1, -1), tol)
    p = P[0]
    r = x - p
    return ProjectionResult(projected=p, residual=r, inner=float(p @ r), active_face=frozenset(faces[0]))


def moreau_check(k: ConeSpec, x, tol: ToleranceConfig = DEFAULT_TOL) -> CheckReport:
    """Check ``x = P_K x + P_K° x`` with orthogonal parts, for one point or a batch.

    The polar projection is computed independently by projecting onto the
    explicitly constructed polar cone. The report's margin is the largest of
    the decomposition error, the orthogonality defect and the mismatch
    between ``(I - P_K) x`` and ``P_K° x``, all normalized by ``1 + |x|``
    (``1 + |x|^2`` for the inner product).
    """
    X, _ = as_batch(x, k.dim)
    polar = polar_cone(k)
    P = project_batch(k, X, tol)
    Q = project_batch(polar, X, tol)
    nx = np.linalg.norm(X, axis=1)
    decomp = np.linalg.norm(X - P - Q, axis=1) / (1.0 + nx)
    inner = np.abs(np.einsum("ij,ij->i", P, Q)) / (1.0 + nx**2)
    resid = np.linalg.norm((X - P) - Q, axis=1) / (1.0 + nx)
    margins = np.maximum(np.maximum(decomp, inner), resid)
    worst = int(np.argmax(margins))
    verdict = PASS if margins[worst] <= tol.membership_tol else FAIL
    witnesses = [("x", X[worst].copy())] if verdict == FAIL else []
    return CheckReport(
        check_name="moreau",
        verdict=verdict,
        samples_used=X.shape[0],
        worst_margin=float(margins[worst]),
        witnesses=witnesses,
        tolerance=tol,
    )


def projection_avn(k: ConeSpec, tol: ToleranceConfig = DEFAULT_TOL) -> AvnOperator:
    """The metric projection onto ``k`` packaged as an operator.

    Projections are always proper (``P(I - P) = 0``); subadditivity is
    left to the verifier.
    """
    # fail early on unsupported cones
    project_batch(k, np.zeros((1, k.dim)), tol)
    return AvnOperator(
        map=lambda Y: project_batch(k, Y, tol),
        cone_range=k,
        construction=Projection(k),
        claimed_properties=frozenset({"proper"}),
        null_cone=polar_cone(k),
        name=f"projection onto {k.describe()}",
    )


def nearest_member_gap(k: ConeSpec, X, candidates) -> np.ndarray:
    """``|x - Px| - min_c |x - c|`` for each row, against candidate members.

    ``candidates`` has shape ``(N, C, n)``; a non-positive result means the
    computed projection is at least as close as every candidate.
    """
    X = np.asarray(X, dtype=np.float64)
    P = project_batch(k, X)
    d_proj = np.linalg.norm(X - P, axis=1)
    d_cand = np.linalg.norm(X[:, None, :] - candidates, axis=2).min(axis=1)
    return d_proj - d_cand

