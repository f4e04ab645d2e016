"""Deterministic local refinement used by counterexample searches."""

from __future__ import annotations

import numpy as np

from .numeric import SampleState, sample_normal


def refine_minimum(f, y0, state: SampleState, rounds: int = 60, step: float = 0.25,
                   sphere: bool = False, batch: int = 8):
    """Step-halving random local search for a minimum of ``f``.

    ``f`` maps an ``(N, d)`` batch to ``N`` values. Each round tries ``batch``
    Gaussian steps of the current length around the incumbent; the step is
    halved whenever no trial improves. With ``sphere`` the iterates are kept
    on the unit sphere. Returns ``(point, value, next_state)``.
    """
    y = np.array(y0, dtype=np.float64)
    fy = float(f(y[None, :])[0])
    for _ in range(rounds):
        dirs, state = sample_normal((batch, y.size), state)
        cand = y + step * dirs
        if sphere:
            cand /= np.linalg.norm(cand, axis=1, keepdims=True)
        fc = f(cand)
        i = int(np.argmin(fc))
        if fc[i] < fy:
            y, fy = cand[i], float(fc[i])
        else:
            step *= 0.5
            if step < 1e-14:
                break
    return y, fy, state
