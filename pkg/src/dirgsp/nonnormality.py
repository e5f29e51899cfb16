"""Scalar measures of asymmetry and departure from normality."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .densela import EIG_TOL, EigenSystem, eig, svd_values
from .digraph import Digraph, laplacian
from .errors import NumericallyDefectiveError

HENRICI_CLAMP = 1e-9
SIGMA_MIN_FLOOR = 1e-14


@dataclass(frozen=True)
class MetricsReport:
    graph_label: str
    kappa: float
    henrici: float
    alpha: float
    delta: float

    def csv_fields(self) -> tuple[str, float, float, float, float]:
        """Values in the column order ``graph,kappa_v,henrici,alpha,delta``."""
        return (self.graph_label, self.kappa, self.henrici, self.alpha, self.delta)


def asymmetry_index(a) -> float:
    """``||A - A^T||_F / ||A||_F``, defined as 0 for the zero matrix."""
    a = np.asarray(a)
    denom = np.linalg.norm(a)
    if denom == 0.0:
        return 0.0
    return float(np.linalg.norm(a - a.T) / denom)


def commutator_departure(a) -> float:
    """``||A A^* - A^* A||_F / ||A||_F^2``, defined as 0 for the zero matrix."""
    a = np.asarray(a)
    denom = np.linalg.norm(a) ** 2
    if denom == 0.0:
        return 0.0
    ah = a.conj().T
    return float(np.linalg.norm(a @ ah - ah @ a) / denom)


def henrici_departure(a, values) -> float:
    """``(||A||_F^2 - sum_k |lambda_k|^2) / n``.

    No square root is taken. Rounding can push a normal matrix's value
    slightly below zero; anything within ``1e-9 * max(1, ||A||_F^2)`` of zero
    from below is clamped to 0.
    """
    a = np.asarray(a)
    values = np.asarray(values)
    n = a.shape[0]
    if values.shape != (n,):
        raise ValueError(f"expected {n} eigenvalues, got {values.size}")
    fro2 = float(np.linalg.norm(a) ** 2)
    d = (fro2 - float(np.sum(np.abs(values) ** 2))) / n
    if d < 0.0:
        if d >= -HENRICI_CLAMP * max(1.0, fro2):
            return 0.0
        raise ValueError(f"eigenvalue mass exceeds Frobenius mass (departure {d:.3e})")
    return d


def condition_number(es: EigenSystem) -> float:
    """``sigma_max(V) / sigma_min(V)`` recomputed from the eigenvector matrix."""
    sv = svd_values(es.vectors)
    if sv[-1] < SIGMA_MIN_FLOOR:
        raise NumericallyDefectiveError(
            f"eigenvector matrix is numerically singular (sigma_min={sv[-1]:.3e})"
        )
    return float(sv[0] / sv[-1])


def report(
    g: Digraph,
    label: str,
    balance: bool = False,
    eig_tol: float = EIG_TOL,
) -> MetricsReport:
    """All four metrics for the Laplacian of ``g``."""
    mat = laplacian(g).matrix
    es = eig(mat, balance=balance, eig_tol=eig_tol)
    return MetricsReport(
        graph_label=label,
        kappa=condition_number(es),
        henrici=henrici_departure(mat, es.values),
        alpha=asymmetry_index(mat),
        delta=commutator_departure(mat),
    )
