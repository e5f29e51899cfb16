"""Singular values by one-sided (Hestenes) Jacobi.

Column pairs are orthogonalized with complex plane rotations. Pairs are
scheduled round-robin so each round touches disjoint columns and can be
applied as one vectorized update.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConvergenceError

MAX_SWEEPS = 60
_EPS = np.finfo(float).eps


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Tournament schedule: ``n - 1`` rounds (``n`` even) of disjoint pairs."""
    players = list(range(n)) + ([-1] if n % 2 else [])
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            p, q = players[i], players[m - 1 - i]
            if p >= 0 and q >= 0:
                ps.append(min(p, q))
                qs.append(max(p, q))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _jacobi_columns(a: np.ndarray, tol: float) -> np.ndarray:
    """Orthogonalize the columns of ``a`` in place; returns ``a``."""
    n = a.shape[1]
    if n < 2:
        return a
    rounds = _round_robin(n)
    for _ in range(MAX_SWEEPS):
        rotated = False
        for ps, qs in rounds:
            ap = a[:, ps]
            aq = a[:, qs]
            alpha = np.sum(np.abs(ap) ** 2, axis=0)
            beta = np.sum(np.abs(aq) ** 2, axis=0)
            gamma = np.sum(ap.conj() * aq, axis=0)
            g = np.abs(gamma)
            active = g > tol * np.sqrt(alpha * beta)
            if not np.any(active):
                continue
            rotated = True
            ps, qs = ps[active], qs[active]
            ap, aq = ap[:, active], aq[:, active]
            alpha, beta, gamma, g = alpha[active], beta[active], gamma[active], g[active]
            phase = gamma / g
            zeta = (beta - alpha) / (2.0 * g)
            t = np.where(zeta >= 0, 1.0, -1.0) / (np.abs(zeta) + np.sqrt(1.0 + zeta * zeta))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = c * t
            # rotate a_p against e^{-i phi} a_q, where phi = arg(gamma)
            aq_rot = aq * phase.conj()
            a[:, ps] = c * ap - s * aq_rot
            a[:, qs] = s * ap + c * aq_rot
        if not rotated:
            return a
    raise ConvergenceError(f"one-sided Jacobi did not converge in {MAX_SWEEPS} sweeps")


def svd_values(a: np.ndarray) -> np.ndarray:
    """Singular values of ``a`` in non-increasing order."""
    a = np.array(a, dtype=complex)
    if a.ndim != 2:
        raise ValueError("svd_values needs a 2-D matrix")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    m, n = a.shape
    if m == 0 or n == 0:
        return np.zeros(0)
    if m < n:
        a = a.conj().T.copy()
    scale = np.max(np.abs(a))
    if scale == 0.0:
        return np.zeros(min(m, n))
    a /= scale
    _jacobi_columns(a, tol=a.shape[0] * _EPS)
    sv = np.linalg.norm(a, axis=0) * scale
    return np.sort(sv)[::-1]


def spectral_norm(a: np.ndarray) -> float:
    sv = svd_values(a)
    return float(sv[0]) if sv.size else 0.0
