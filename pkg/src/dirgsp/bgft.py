"""Biorthogonal graph Fourier transform on the eigenbasis of a directed Laplacian.

Analysis solves ``V x_hat = x`` with a cached LU factorization of ``V``;
synthesis is the product ``V x_hat``. Because ``V`` is not unitary in general,
vertex energy is the Gram quadratic form ``x_hat^* (V^* V) x_hat``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .densela import EIG_TOL, EigenSystem, dual_basis, eig
from .densela.lu import LUFactors, lu_factor
from .digraph import Laplacian
from .errors import ConsistencyError, DomainError

DC_RTOL = 1e-9
IMAG_RTOL = 1e-9


class Domain(enum.Enum):
    VERTEX = "vertex"
    SPECTRAL = "spectral"


@dataclass(frozen=True, eq=False)
class Signal:
    values: np.ndarray
    domain: Domain = Domain.VERTEX

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        if v.ndim != 1:
            raise DomainError(f"signal must be one-dimensional, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise DomainError("signal has non-finite entries")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.shape[0]

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.values))


def vertex_signal(x) -> Signal:
    return Signal(x, Domain.VERTEX)


def spectral_signal(x_hat) -> Signal:
    return Signal(x_hat, Domain.SPECTRAL)


def _coerce(x, domain: Domain, n: int) -> Signal:
    """Accept a tagged Signal or a bare array (assumed to be in ``domain``)."""
    if isinstance(x, Signal):
        if x.domain is not domain:
            raise DomainError(f"expected a {domain.value} signal, got {x.domain.value}")
        sig = x
    else:
        sig = Signal(x, domain)
    if len(sig) != n:
        raise DomainError(f"signal has length {len(sig)}, spectrum has size {n}")
    return sig


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigensystem of a Laplacian plus the Gram matrix and LU factors of ``V``."""

    eigensystem: EigenSystem
    gram: np.ndarray
    lu: LUFactors

    @classmethod
    def from_eigensystem(cls, es: EigenSystem) -> "Spectrum":
        v = es.vectors
        m = v.conj().T @ v
        m = 0.5 * (m + m.conj().T)
        m.setflags(write=False)
        return cls(es, m, lu_factor(v))

    @classmethod
    def from_laplacian(
        cls,
        lap: Laplacian | np.ndarray,
        balance: bool = False,
        eig_tol: float = EIG_TOL,
        accept_defective: bool = False,
    ) -> "Spectrum":
        mat = np.asarray(getattr(lap, "matrix", lap))
        es = eig(mat, balance=balance, eig_tol=eig_tol, accept_defective=accept_defective)
        return cls.from_eigensystem(es)

    @property
    def n(self) -> int:
        return self.eigensystem.n

    @property
    def values(self) -> np.ndarray:
        return self.eigensystem.values

    @property
    def vectors(self) -> np.ndarray:
        return self.eigensystem.vectors

    @property
    def kappa(self) -> float:
        return self.eigensystem.kappa

    def dual(self) -> np.ndarray:
        return dual_basis(self.eigensystem)

    def zero_modes(self, scale: float) -> np.ndarray:
        """Indices with ``|lambda| <= 1e-9 * scale`` (``scale`` is usually ``||L||_F``)."""
        return np.flatnonzero(np.abs(self.values) <= DC_RTOL * max(scale, 1.0))


def forward(spectrum: Spectrum, x) -> Signal:
    """BGFT analysis: coefficients ``x_hat`` solving ``V x_hat = x``."""
    sig = _coerce(x, Domain.VERTEX, spectrum.n)
    return Signal(spectrum.lu.solve(sig.values), Domain.SPECTRAL)


def inverse(spectrum: Spectrum, x_hat) -> Signal:
    """BGFT synthesis ``x = V x_hat``."""
    sig = _coerce(x_hat, Domain.SPECTRAL, spectrum.n)
    return Signal(spectrum.vectors @ sig.values, Domain.VERTEX)


def spectral_energy(spectrum: Spectrum, x_hat) -> float:
    """Vertex-domain energy ``||V x_hat||^2`` as the Gram form ``x_hat^* M x_hat``."""
    c = _coerce(x_hat, Domain.SPECTRAL, spectrum.n).values
    q = np.vdot(c, spectrum.gram @ c)
    if abs(q.imag) > IMAG_RTOL * max(abs(q.real), np.finfo(float).tiny):
        raise ConsistencyError(f"Gram form has imaginary part {q.imag:.3e} (real part {q.real:.3e})")
    return max(float(q.real), 0.0)


def parseval_bounds(spectrum: Spectrum, x_hat) -> tuple[float, float]:
    """``(sigma_min(V)^2 ||x_hat||^2, sigma_max(V)^2 ||x_hat||^2)``."""
    c = _coerce(x_hat, Domain.SPECTRAL, spectrum.n).values
    e = float(np.real(np.vdot(c, c)))
    es = spectrum.eigensystem
    return es.sigma_min**2 * e, es.sigma_max**2 * e


def apply_filter(spectrum: Spectrum, response, x) -> Signal:
    """Diagonal filtering ``V diag(h) V^{-1} x`` with ``h`` in frequency order."""
    h = np.asarray(response, dtype=complex)
    if h.shape != (spectrum.n,):
        raise DomainError(f"filter response must have length {spectrum.n}, got shape {h.shape}")
    x_hat = forward(spectrum, x)
    return inverse(spectrum, Signal(h * x_hat.values, Domain.SPECTRAL))


def band_indicator(n: int, omega) -> np.ndarray:
    """Ideal band-pass response: ones on ``omega``, zeros elsewhere."""
    h = np.zeros(n, dtype=complex)
    h[np.asarray(list(omega), dtype=int)] = 1.0
    return h
