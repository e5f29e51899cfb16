"""Osborne diagonal balancing with power-of-two scale factors."""

from __future__ import annotations

import numpy as np

RADIX = 2.0
_CONVERGE = 0.95
MAX_PASSES = 1000


def balance(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Balance ``a`` by a diagonal similarity.

    Returns ``(d, a_b)`` with ``a_b = diag(d)^{-1} a diag(d)``. Each ``d[i]`` is
    an integer power of two, so the similarity is exact in floating point
    and ``a_b`` has exactly the eigenvalues of ``a``. After balancing, the
    off-diagonal 1-norms of row ``i`` and column ``i`` agree within a factor of
    two for every ``i`` that has both.
    """
    a_b = np.array(a, dtype=float)
    if a_b.ndim != 2 or a_b.shape[0] != a_b.shape[1]:
        raise ValueError(f"balance needs a square matrix, got shape {a_b.shape}")
    n = a_b.shape[0]
    d = np.ones(n)
    radix_sq = RADIX * RADIX
    for _ in range(MAX_PASSES):
        done = True
        for i in range(n):
            c = np.sum(np.abs(a_b[:, i])) - abs(a_b[i, i])
            r = np.sum(np.abs(a_b[i, :])) - abs(a_b[i, i])
            if c == 0.0 or r == 0.0:
                continue
            g = r / RADIX
            f = 1.0
            s = c + r
            while c < g:
                f *= RADIX
                c *= radix_sq
            g = r * RADIX
            while c >= g:
                f /= RADIX
                c /= radix_sq
            if (c + r) / f < _CONVERGE * s:
                done = False
                d[i] *= f
                a_b[i, :] /= f
                a_b[:, i] *= f
        if done:
            break
    return d, a_b
