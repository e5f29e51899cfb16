"""Householder QR with column pivoting and the least-squares solver built on it."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import RankDeficientError

RANK_RTOL = 1e-10


def householder_vector(x: np.ndarray) -> tuple[np.ndarray, complex, float]:
    """Reflector ``H = I - tau v v^*`` with ``v[0] = 1`` mapping ``x`` to ``beta e_1``.

    Returns ``(v, beta, tau)``. ``tau == 0`` means ``x`` is already a multiple
    of ``e_1`` with nothing to annihilate.
    """
    x = np.asarray(x, dtype=complex)
    v = x.copy()
    alpha = x[0]
    tail = np.linalg.norm(x[1:]) if x.size > 1 else 0.0
    if tail == 0.0 and alpha.imag == 0.0:
        v[:] = 0
        v[0] = 1.0
        return v, alpha, 0.0
    norm = np.hypot(abs(alpha), tail)
    # beta takes the sign opposite to alpha so v[0] = alpha - beta has no cancellation
    phase = alpha / abs(alpha) if alpha != 0 else 1.0
    beta = -phase * norm
    v0 = alpha - beta
    v[1:] = x[1:] / v0
    v[0] = 1.0
    tau = float(2.0 / np.real(np.vdot(v, v)))
    return v, beta, tau


@dataclass(frozen=True, eq=False)
class PivotedQR:
    """Compact ``A P = Q R``: reflectors below the diagonal, ``R`` on and above."""

    qr: np.ndarray
    taus: np.ndarray
    perm: np.ndarray

    @property
    def r_diag(self) -> np.ndarray:
        k = min(self.qr.shape)
        return np.abs(np.diag(self.qr)[:k])

    def apply_qh(self, y: np.ndarray) -> np.ndarray:
        """``Q^* y`` using the stored reflectors."""
        y = np.array(y, dtype=complex)
        m = self.qr.shape[0]
        for k, tau in enumerate(self.taus):
            if tau == 0.0:
                continue
            v = np.concatenate(([1.0], self.qr[k + 1 :, k]))
            y[k:] -= tau * v * np.vdot(v, y[k:])
        return y

    def numerical_rank(self, rtol: float = RANK_RTOL) -> int:
        d = self.r_diag
        if d.size == 0 or d[0] == 0.0:
            return 0
        return int(np.sum(d >= rtol * d[0]))


def qr_pivoted(a: np.ndarray) -> PivotedQR:
    a = np.array(a, dtype=complex)
    if a.ndim != 2:
        raise ValueError("qr_pivoted needs a 2-D matrix")
    m, n = a.shape
    steps = min(m, n)
    perm = np.arange(n)
    taus = np.zeros(steps)
    colnorm = np.sum(np.abs(a) ** 2, axis=0)
    for k in range(steps):
        # exact column norms of the trailing block; recomputed to avoid downdating drift
        colnorm[k:] = np.sum(np.abs(a[k:, k:]) ** 2, axis=0)
        p = k + int(np.argmax(colnorm[k:]))
        if p != k:
            a[:, [k, p]] = a[:, [p, k]]
            perm[[k, p]] = perm[[p, k]]
            colnorm[[k, p]] = colnorm[[p, k]]
        v, beta, tau = householder_vector(a[k:, k])
        taus[k] = tau
        if tau != 0.0:
            a[k:, k + 1 :] -= tau * np.outer(v, v.conj() @ a[k:, k + 1 :])
            a[k, k] = beta
            a[k + 1 :, k] = v[1:]
    return PivotedQR(a, taus, perm)


def least_squares(b: np.ndarray, y: np.ndarray, rtol: float = RANK_RTOL) -> np.ndarray:
    """Minimize ``||B c - y||_2`` for a tall, full-column-rank ``B``.

    Raises ``RankDeficientError`` when the smallest retained pivot of the
    column-pivoted QR falls below ``rtol`` times the largest.
    """
    b = np.asarray(b)
    y = np.asarray(y)
    if b.ndim != 2:
        raise ValueError("least_squares needs a 2-D coefficient matrix")
    m, k = b.shape
    if y.shape != (m,):
        raise ValueError(f"right-hand side must have shape ({m},), got {y.shape}")
    if m < k:
        raise RankDeficientError(f"underdetermined system: {m} rows < {k} columns")
    if k == 0:
        return np.zeros(0, dtype=complex)
    f = qr_pivoted(b)
    rank = f.numerical_rank(rtol)
    if rank < k:
        d = f.r_diag
        ratio = d[-1] / d[0] if d[0] > 0 else 0.0
        raise RankDeficientError(
            f"numerical rank {rank} < {k} columns (pivot ratio {ratio:.3e})"
        )
    z = f.apply_qh(y)[:k]
    r = f.qr[:k, :k]
    c = np.zeros(k, dtype=complex)
    for i in range(k - 1, -1, -1):
        c[i] = (z[i] - r[i, i + 1 :] @ c[i + 1 :]) / r[i, i]
    out = np.empty(k, dtype=complex)
    out[f.perm] = c
    return out
