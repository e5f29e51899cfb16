"""LU factorization with partial pivoting over the complex numbers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import SingularMatrixError

PIVOT_RTOL = 1e-14


@dataclass(frozen=True, eq=False)
class LUFactors:
    """Packed ``P A = L U``: unit-lower ``L`` below the diagonal, ``U`` on and above.

    ``perm[i]`` is the original row that ended up in position ``i``.
    """

    lu: np.ndarray
    perm: np.ndarray

    @property
    def n(self) -> int:
        return self.lu.shape[0]

    def solve(self, b: np.ndarray) -> np.ndarray:
        b = np.asarray(b)
        vector = b.ndim == 1
        x = np.array(b[self.perm], dtype=complex)
        if vector:
            x = x[:, None]
        if x.shape[0] != self.n:
            raise ValueError(f"right-hand side has {x.shape[0]} rows, expected {self.n}")
        lu = self.lu
        n = self.n
        for i in range(1, n):
            x[i] -= lu[i, :i] @ x[:i]
        for i in range(n - 1, -1, -1):
            x[i] -= lu[i, i + 1 :] @ x[i + 1 :]
            x[i] /= lu[i, i]
        return x[:, 0] if vector else x


def lu_factor(a: np.ndarray) -> LUFactors:
    """Factor a square matrix; raise ``SingularMatrixError`` on a tiny pivot.

    A pivot counts as tiny when its modulus is below ``1e-14 * ||A||_F``.
    """
    a = np.array(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"lu_factor needs a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    n = a.shape[0]
    scale = np.linalg.norm(a)
    threshold = PIVOT_RTOL * scale
    perm = np.arange(n)
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        pivot = abs(a[p, k])
        if pivot == 0.0 or pivot < threshold:
            raise SingularMatrixError(
                f"matrix is singular to working precision (pivot {pivot:.3e} at step {k})"
            )
        if p != k:
            a[[k, p]] = a[[p, k]]
            perm[[k, p]] = perm[[p, k]]
        a[k + 1 :, k] /= a[k, k]
        a[k + 1 :, k + 1 :] -= np.outer(a[k + 1 :, k], a[k, k + 1 :])
    return LUFactors(a, perm)


def lu_solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``A X = B`` without forming an inverse."""
    return lu_factor(a).solve(b)
