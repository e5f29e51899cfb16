"""Directed total variation ``||Lx||^2`` and its spectral sandwich bounds."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import DomainError

if TYPE_CHECKING:
    from .bgft import Signal, Spectrum
    from .digraph import Laplacian


@dataclass(frozen=True)
class FrequencyOrder:
    """Permutation listing eigenpairs by non-decreasing ``|lambda|``."""

    permutation: np.ndarray

    def __len__(self):
        return len(self.permutation)


def frequency_order(values) -> FrequencyOrder:
    """Stable ascending sort by ``(|lambda|, Re lambda, Im lambda)``.

    Ties are compared exactly. Conjugate pairs coming out of the eigensolver
    carry bitwise-equal moduli, so the pair is ordered by imaginary part.
    """
    values = np.asarray(values, dtype=complex).ravel()
    # np.lexsort uses the last key as primary
    perm = np.lexsort((values.imag, values.real, np.abs(values)))
    perm = np.asarray(perm, dtype=int)
    perm.setflags(write=False)
    return FrequencyOrder(perm)


def _as_array(x) -> np.ndarray:
    return np.asarray(getattr(x, "values", x), dtype=complex)


def directed_tv(lap: "Laplacian | np.ndarray", x) -> float:
    """``||L x||_2^2`` evaluated in the vertex domain."""
    mat = np.asarray(getattr(lap, "matrix", lap))
    xv = _as_array(x)
    if xv.shape != (mat.shape[1],):
        raise DomainError(f"signal length {xv.shape} does not match Laplacian size {mat.shape[0]}")
    r = mat @ xv
    return float(np.real(np.vdot(r, r)))


def _spectral_weight(spectrum: "Spectrum", x_hat) -> float:
    coeffs = _as_array(x_hat)
    lam = spectrum.eigensystem.values
    if coeffs.shape != lam.shape:
        raise DomainError(f"coefficient length {coeffs.shape} does not match spectrum size {lam.shape}")
    return float(np.sum(np.abs(lam) ** 2 * np.abs(coeffs) ** 2))


def tv_bounds(spectrum: "Spectrum", x_hat) -> tuple[float, float]:
    """Two-sided bounds on ``||L V x_hat||^2``.

    With ``s = sum_k |lambda_k|^2 |x_hat_k|^2`` the bounds are
    ``(sigma_min(V)^2 s, sigma_max(V)^2 s)``. They coincide when V is unitary.
    """
    s = _spectral_weight(spectrum, x_hat)
    es = spectrum.eigensystem
    return es.sigma_min**2 * s, es.sigma_max**2 * s


def spectral_tv(spectrum: "Spectrum", x_hat) -> float:
    """``x_hat^* (Lambda^* M Lambda) x_hat``, i.e. ``||V Lambda x_hat||^2``."""
    coeffs = _as_array(x_hat)
    z = spectrum.eigensystem.values * coeffs
    return float(np.real(np.vdot(z, spectrum.gram @ z)))
