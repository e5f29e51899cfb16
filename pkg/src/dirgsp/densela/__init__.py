"""Self-contained dense linear algebra kernel (complex double precision)."""

from .balance import balance
from .eig import EIG_TOL, EigenSystem, block_eigenvalues, eig, hessenberg, real_schur
from .lu import LUFactors, lu_factor, lu_solve
from .qr import least_squares, qr_pivoted
from .svd import spectral_norm, svd_values

__all__ = [
    "EIG_TOL",
    "EigenSystem",
    "LUFactors",
    "balance",
    "block_eigenvalues",
    "dual_basis",
    "eig",
    "hessenberg",
    "least_squares",
    "lu_factor",
    "lu_solve",
    "qr_pivoted",
    "real_schur",
    "spectral_norm",
    "svd_values",
]


def dual_basis(es: EigenSystem):
    """Left eigenvector basis ``U = (V^{-1})^*`` so that ``U^* V = I``.

    Obtained by solving ``V^T X = I`` and conjugating; ``V^{-1}`` is never
    formed by explicit inversion.
    """
    import numpy as np

    v = es.vectors
    x = lu_solve(v.T, np.eye(v.shape[0], dtype=complex))
    return x.conj()
