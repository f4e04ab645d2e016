"""Small dense linear algebra, deterministic sampling and the tolerance policy.

Every approximate operation in the package takes a :class:`ToleranceConfig`
explicitly. Sampling never touches global random state: a :class:`SampleState`
is passed in and a successor state is returned, and each draw is a pure
function of ``(seed, index)``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, replace

import numpy as np

from .errors import DimensionMismatch, SingularMatrix

RCOND_THRESHOLD = 1e-12


@dataclass(frozen=True)
class ToleranceConfig:
    abs_tol: float = 1e-9
    rel_tol: float = 1e-9
    membership_tol: float = 1e-8
    sample_count: int = 1000
    seed: int = 42

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol", "membership_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.sample_count < 1:
            raise ValueError("sample_count must be at least 1")

    def with_(self, **changes) -> "ToleranceConfig":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return asdict(self)


DEFAULT_TOL = ToleranceConfig()


def as_vec(x, dim: int | None = None) -> np.ndarray:
    """Coerce to a finite 1-D float64 array, optionally checking its length."""
    v = np.asarray(x, dtype=np.float64)
    if v.ndim == 0:
        v = v.reshape(1)
    if v.ndim != 1 or v.size == 0:
        raise DimensionMismatch(f"expected a non-empty vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    if dim is not None and v.size != dim:
        raise DimensionMismatch(f"expected length {dim}, got {v.size}")
    return v


def as_batch(x, dim: int) -> tuple[np.ndarray, bool]:
    """View ``x`` as an ``(N, dim)`` batch; the flag says whether it was a single vector."""
    arr = np.asarray(x, dtype=np.float64)
    single = arr.ndim == 1
    arr = np.atleast_2d(arr)
    if arr.ndim != 2 or arr.shape[1] != dim:
        raise DimensionMismatch(f"expected trailing dimension {dim}, got shape {np.shape(x)}")
    return arr, single


def unbatch(arr: np.ndarray, single: bool) -> np.ndarray:
    return arr[0] if single else arr


def solve(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Solve ``a @ x = b`` for square ``a``.

    Raises :class:`SingularMatrix` when the reciprocal 2-norm condition
    number of ``a`` is at or below ``1e-12``.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"solve needs a square matrix, got shape {a.shape}")
    if b.shape[0] != a.shape[0]:
        raise DimensionMismatch(f"right-hand side has {b.shape[0]} rows, matrix has {a.shape[0]}")
    if reciprocal_condition(a) <= RCOND_THRESHOLD:
        raise SingularMatrix("matrix is singular to working precision")
    x = np.linalg.solve(a, b)
    resid = np.linalg.norm(a @ x - b)
    bound = tol.rel_tol * (np.linalg.norm(a) * np.linalg.norm(x) + np.linalg.norm(b))
    if resid > max(bound, tol.abs_tol):
        raise SingularMatrix(f"solve residual {resid:.3e} exceeds {bound:.3e}")
    return x


def reciprocal_condition(a: np.ndarray) -> float:
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0.0:
        return 0.0
    return float(s[-1] / s[0])


def matrix_rank(a, tol: float = 1e-10) -> int:
    a = np.atleast_2d(np.asarray(a, dtype=np.float64))
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0]))


@dataclass(frozen=True)
class SampleState:
    """Position in a deterministic stream of sample batches.

    The batch drawn at a state depends only on ``(seed, index)``; each draw
    returns the state with ``index + 1``.
    """

    seed: int
    index: int = 0

    @classmethod
    def from_tol(cls, tol: ToleranceConfig, stream: int = 0) -> "SampleState":
        return cls(seed=tol.seed, index=stream << 32)

    def rng(self) -> np.random.Generator:
        return np.random.default_rng([self.seed & 0xFFFFFFFFFFFFFFFF, self.index])

    def advance(self) -> "SampleState":
        return SampleState(self.seed, self.index + 1)


def sample_unit_ball(n: int, state: SampleState, count: int | None = None):
    """Uniform samples from the closed Euclidean unit ball in R^n.

    Normalized-Gaussian direction times a radius ``U ** (1/n)``, which is
    uniform over the whole ball. Returns ``(samples, next_state)``; samples
    are a single vector when ``count`` is None, else a ``(count, n)`` array.
    """
    if n < 1:
        raise ValueError("dimension must be at least 1")
    rng = state.rng()
    k = 1 if count is None else count
    g = rng.standard_normal((k, n))
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    r = rng.random((k, 1)) ** (1.0 / n)
    out = g / norms * r
    return (out[0] if count is None else out), state.advance()


def sample_unit_sphere(n: int, state: SampleState, count: int):
    rng = state.rng()
    g = rng.standard_normal((count, n))
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    # a zero Gaussian draw has probability zero; map it to e1 to stay finite
    zero = norms[:, 0] == 0.0
    g[zero, 0] = 1.0
    norms[zero] = 1.0
    return g / norms, state.advance()


def sample_normal(shape, state: SampleState):
    return state.rng().standard_normal(shape), state.advance()


def sample_uniform(shape, state: SampleState, low: float = 0.0, high: float = 1.0):
    return state.rng().uniform(low, high, shape), state.advance()


def random_orthogonal(n: int, state: SampleState):
    """Haar-distributed orthogonal matrix (QR of a Gaussian with sign fix)."""
    g, state = sample_normal((n, n), state)
    q, r = np.linalg.qr(g)
    q = q * np.sign(np.where(np.diag(r) == 0.0, 1.0, np.diag(r)))
    return q, state
