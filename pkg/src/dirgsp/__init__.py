"""Biorthogonal spectral analysis of signals on directed graphs.

The combinatorial Laplacian ``L = D_out - A`` of a digraph is generally
non-normal. This package diagonalizes it with a self-contained dense
eigensolver, transforms signals in the resulting non-orthogonal eigenbasis,
and reports how far that basis is from orthogonal wherever it matters:
energy, variation, sampling and noise amplification.
"""

from .bgft import (
    Domain,
    Signal,
    Spectrum,
    apply_filter,
    band_indicator,
    forward,
    inverse,
    parseval_bounds,
    spectral_energy,
    spectral_signal,
    vertex_signal,
)
from .digraph import (
    Digraph,
    Laplacian,
    directed_cycle,
    from_edge_list,
    laplacian,
    parse_edge_list,
    perturbed_cycle,
    read_edge_list,
)
from .nonnormality import (
    MetricsReport,
    asymmetry_index,
    commutator_departure,
    condition_number,
    henrici_departure,
    report,
)
from .sampling import (
    RecoveryResult,
    SamplingPlan,
    amplification_bound,
    lowest_band,
    make_plan,
    noise_bound,
    recover,
)
from .variation import FrequencyOrder, directed_tv, frequency_order, spectral_tv, tv_bounds

__version__ = "0.1.0"
