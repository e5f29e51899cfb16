"""Bandlimited sampling, least-squares recovery and the associated error bounds.

A band ``omega`` selects eigenvector columns (indices in frequency order) and
a sample set picks vertices. Recovery is stable exactly when the sampled
band matrix ``B = P_M V_omega`` has full column rank; ``gamma = sigma_min(B)``
measures how informative the samples are, while ``||V_omega||_2`` measures the
eigenvector geometry. The two factors multiply into the noise bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bgft import Spectrum
from .densela import least_squares, svd_values
from .errors import DomainError, RankDeficientError, UnrecoverableError

RANK_RTOL = 1e-10


def _index_array(indices, limit: int, what: str) -> np.ndarray:
    arr = np.asarray(list(indices), dtype=int)
    if arr.ndim != 1:
        raise DomainError(f"{what} must be a flat index list")
    if arr.size and (arr.min() < 0 or arr.max() >= limit):
        raise DomainError(f"{what} contains an index outside [0, {limit})")
    if len(set(arr.tolist())) != arr.size:
        raise DomainError(f"{what} contains duplicate indices")
    arr.setflags(write=False)
    return arr


def lowest_band(spectrum: Spectrum, k: int) -> np.ndarray:
    """The ``k`` lowest-|lambda| indices (the spectrum is already frequency ordered)."""
    if not 0 <= k <= spectrum.n:
        raise DomainError(f"band size {k} outside [0, {spectrum.n}]")
    return np.arange(k)


@dataclass(frozen=True, eq=False)
class SamplingPlan:
    omega: np.ndarray
    samples: np.ndarray
    v_omega: np.ndarray
    b: np.ndarray
    gamma: float
    vnorm: float
    full_rank: bool

    @property
    def k(self) -> int:
        return self.omega.size

    @property
    def m(self) -> int:
        return self.samples.size


@dataclass(frozen=True, eq=False)
class RecoveryResult:
    x_hat: np.ndarray
    c_hat: np.ndarray
    residual: float
    bound_noise: float | None = None


def make_plan(spectrum: Spectrum, omega, samples, rank_rtol: float = RANK_RTOL) -> SamplingPlan:
    """Assemble ``B = P_M V_omega`` and its stability constant.

    ``gamma`` is reported as 0 when fewer samples than band columns are taken.
    The plan is flagged not full rank when ``gamma < rank_rtol * sigma_max(B)``.
    """
    n = spectrum.n
    omega = _index_array(omega, n, "band")
    samples = _index_array(samples, n, "sample set")
    v_omega = spectrum.vectors[:, omega]
    b = v_omega[samples, :]
    vnorm = float(svd_values(v_omega)[0]) if omega.size else 0.0
    if omega.size == 0 or samples.size < omega.size:
        gamma = 0.0
        full_rank = omega.size == 0
    else:
        sv = svd_values(b)
        gamma = float(sv[omega.size - 1])
        full_rank = gamma > 0.0 and gamma >= rank_rtol * float(sv[0])
    return SamplingPlan(omega, samples, v_omega, b, gamma, vnorm, full_rank)


def noise_bound(plan: SamplingPlan, eta_norm: float) -> float:
    """``||V_omega||_2 * eta_norm / gamma``."""
    if not plan.gamma > 0.0:
        raise UnrecoverableError("noise bound undefined for a rank-deficient plan")
    return plan.vnorm * eta_norm / plan.gamma


def recover(plan: SamplingPlan, y, eta_norm: float | None = None) -> RecoveryResult:
    """Least-squares band coefficients from samples ``y`` and the synthesized signal."""
    if not plan.full_rank:
        raise UnrecoverableError(
            f"sample set of size {plan.m} does not determine a band of size {plan.k} "
            f"(gamma={plan.gamma:.3e})"
        )
    y = np.asarray(y, dtype=complex)
    if y.shape != (plan.m,):
        raise DomainError(f"expected {plan.m} samples, got shape {y.shape}")
    try:
        c_hat = least_squares(plan.b, y)
    except RankDeficientError as exc:
        raise UnrecoverableError(str(exc)) from exc
    x_hat = plan.v_omega @ c_hat
    residual = float(np.linalg.norm(plan.b @ c_hat - y))
    bound = None if eta_norm is None else noise_bound(plan, eta_norm)
    return RecoveryResult(x_hat, c_hat, residual, bound)


def amplification_bound(kappa: float, eta_norm: float, coeff_norm: float) -> float:
    """Upper bound ``kappa * eta_norm / coeff_norm`` on ``||V eta|| / ||V x_hat||``."""
    if not coeff_norm > 0.0:
        raise ValueError("coefficient norm must be positive")
    return kappa * eta_norm / coeff_norm
