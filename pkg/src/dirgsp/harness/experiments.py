"""Experiment drivers behind the CLI subcommands.

Each driver returns its rows and, when given an output directory, writes
them as CSV. Random trials draw from per-trial substreams of the user seed,
so a trial's numbers do not depend on execution order or on ``jobs``. The
trial stream does not depend on the graph either, which pairs the cycle and
perturbed families on identical coefficient and noise draws.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from ..bgft import Spectrum, apply_filter, band_indicator
from ..densela import EIG_TOL
from ..digraph import Digraph, directed_cycle, laplacian, perturbed_cycle, read_edge_list
from ..errors import ConsistencyError, DirGSPError
from ..nonnormality import MetricsReport, report
from ..sampling import RANK_RTOL, lowest_band, make_plan, recover
from .prng import Prng

DEFAULT_LEVELS = (0.0, 0.01, 0.05, 0.1, 0.2, 0.5)
MAX_PLAN_ATTEMPTS = 100
BOUND_RTOL = 1e-9
EXACT_RTOL = 1e-8

METRICS_HEADER = ("graph", "kappa_v", "henrici", "alpha", "delta")
SPECTRA_HEADER = ("graph", "k", "re_lambda", "im_lambda")
DENOISE_HEADER = ("graph", "level", "trial", "rel_error", "kappa_v")
SAMPLE_HEADER = ("graph", "trial", "m", "gamma", "vnorm", "eta_norm", "rel_error", "bound", "skipped")


class ConfigError(DirGSPError, ValueError):
    pass


@dataclass
class ExperimentConfig:
    graph_kind: str | None = None  # None runs both cycle and perturbed
    n: int = 20
    p: float = 0.2
    w: float = 0.8
    seed: int | None = None
    k: int = 5
    noise_levels: Sequence[float] = DEFAULT_LEVELS
    trials: int = 100
    sample_set_size: int | None = None
    noise: float = 0.1
    edges: str | None = None
    output_dir: str | None = None
    balance: bool = False
    eig_tol: float = EIG_TOL
    rank_rtol: float = RANK_RTOL
    jobs: int = 1

    @property
    def kinds(self) -> list[str]:
        return [self.graph_kind] if self.graph_kind else ["cycle", "perturbed"]

    @property
    def m(self) -> int:
        return self.sample_set_size if self.sample_set_size is not None else 2 * self.k

    def validate(self, needs_seed: bool = False) -> None:
        if self.graph_kind not in (None, "cycle", "perturbed", "file"):
            raise ConfigError(f"unknown graph kind {self.graph_kind!r}")
        if self.graph_kind == "file" and not self.edges:
            raise ConfigError("--graph file needs --edges <path>")
        if (needs_seed or "perturbed" in self.kinds) and self.seed is None:
            raise ConfigError("--seed is required for this command")
        if self.seed is not None and not 0 <= self.seed < 2**64:
            raise ConfigError("--seed must be an unsigned 64-bit integer")
        if self.n < 2:
            raise ConfigError("--n must be at least 2")
        if self.k < 1:
            raise ConfigError("--k must be positive")
        if self.trials < 0:
            raise ConfigError("--trials must be non-negative")
        if any(not (math.isfinite(v) and v >= 0) for v in self.noise_levels):
            raise ConfigError("noise levels must be finite and non-negative")
        if not (math.isfinite(self.noise) and self.noise >= 0):
            raise ConfigError("--noise must be finite and non-negative")
        if self.jobs < 1:
            raise ConfigError("--jobs must be positive")


def build_graph(cfg: ExperimentConfig, kind: str) -> Digraph:
    if kind == "cycle":
        return directed_cycle(cfg.n)
    if kind == "perturbed":
        return perturbed_cycle(cfg.n, cfg.p, cfg.w, cfg.seed)
    if kind == "file":
        return read_edge_list(cfg.edges)
    raise ConfigError(f"unknown graph kind {kind!r}")


def build_graphs(cfg: ExperimentConfig) -> list[tuple[str, Digraph]]:
    return [(kind, build_graph(cfg, kind)) for kind in cfg.kinds]


def _spectrum(cfg: ExperimentConfig, g: Digraph) -> Spectrum:
    return Spectrum.from_laplacian(laplacian(g), balance=cfg.balance, eig_tol=cfg.eig_tol)


def expected_norm(dim: int) -> float:
    """E||z|| for a standard circular complex Gaussian vector z in C^dim."""
    return math.exp(math.lgamma(dim + 0.5) - math.lgamma(dim))


def fmt(value) -> str:
    """Shortest round-trip text for floats; plain ``str`` for everything else."""
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (np.integer,)):
        return str(int(value))
    return str(value)


def write_csv(path: str | os.PathLike, header: Sequence[str], rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])
    return path


def _run_trials(fn: Callable[[int], object], count: int, jobs: int) -> list:
    if jobs <= 1 or count <= 1:
        return [fn(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, range(count)))


def _maybe_write(cfg: ExperimentConfig, name: str, header, rows) -> None:
    if cfg.output_dir is not None:
        write_csv(Path(cfg.output_dir) / name, header, rows)


# table1


def cmd_table1(cfg: ExperimentConfig) -> list[MetricsReport]:
    cfg.validate()
    reports = [report(g, kind, balance=cfg.balance, eig_tol=cfg.eig_tol) for kind, g in build_graphs(cfg)]
    _maybe_write(cfg, "metrics.csv", METRICS_HEADER, [r.csv_fields() for r in reports])
    return reports


# spectra


def cmd_spectra(cfg: ExperimentConfig) -> list[tuple[str, int, float, float]]:
    cfg.validate()
    rows = []
    for kind, g in build_graphs(cfg):
        spec = _spectrum(cfg, g)
        for k, lam in enumerate(spec.values):
            rows.append((kind, k, float(lam.real), float(lam.imag)))
    _maybe_write(cfg, "spectra.csv", SPECTRA_HEADER, rows)
    return rows


# denoise


def denoise_trial(
    spectrum: Spectrum, omega: np.ndarray, seed: int, stream: int, level: float
) -> float:
    """One denoising trial; returns ``||x_rec - x|| / ||x||``.

    Draws ``len(omega)`` band coefficients, then ``n`` noise entries, from
    substream ``stream``. The clean signal has unit norm and the noise is
    scaled so that ``E||eta|| = level``.
    """
    rng = Prng.substream(seed, stream)
    n = spectrum.n
    c = rng.complex_normals(omega.size)
    x = spectrum.vectors[:, omega] @ c
    x = x / np.linalg.norm(x)
    eta = rng.complex_normals(n) * (level / expected_norm(n))
    h = band_indicator(n, omega)
    x_rec = apply_filter(spectrum, h, x + eta).values
    return float(np.linalg.norm(x_rec - x) / np.linalg.norm(x))


def cmd_denoise(cfg: ExperimentConfig) -> list[tuple[str, float, int, float, float]]:
    cfg.validate(needs_seed=True)
    rows = []
    for kind, g in build_graphs(cfg):
        spec = _spectrum(cfg, g)
        omega = lowest_band(spec, min(cfg.k, spec.n))
        for li, level in enumerate(cfg.noise_levels):
            base = li * cfg.trials
            errs = _run_trials(
                lambda t: denoise_trial(spec, omega, cfg.seed, base + t, level),
                cfg.trials,
                cfg.jobs,
            )
            rows += [(kind, float(level), t, e, spec.kappa) for t, e in enumerate(errs)]
    _maybe_write(cfg, "denoise.csv", DENOISE_HEADER, rows)
    return rows


def mean_errors(rows) -> dict[tuple[str, float], float]:
    """Mean ``rel_error`` per ``(graph, level)`` from denoise rows."""
    acc: dict[tuple[str, float], list[float]] = {}
    for graph, level, _trial, err, _kappa in rows:
        acc.setdefault((graph, level), []).append(err)
    return {key: float(np.mean(v)) for key, v in acc.items()}


# sample


@dataclass(frozen=True)
class SampleRow:
    graph: str
    trial: int
    m: int
    gamma: float
    vnorm: float
    eta_norm: float
    rel_error: float
    bound: float
    skipped: int

    def fields(self):
        return (self.graph, self.trial, self.m, self.gamma, self.vnorm, self.eta_norm,
                self.rel_error, self.bound, self.skipped)


def bound_holds(error: float, bound: float) -> bool:
    """Deterministic inequality check with rounding slack only.

    ``BOUND_RTOL`` absorbs rounding in the bound itself; ``EXACT_RTOL`` (on a
    unit-norm signal) absorbs the floor of the recovery error when the
    noise, and therefore the bound, is zero.
    """
    return error <= bound * (1.0 + BOUND_RTOL) + EXACT_RTOL


def sample_trial(
    spectrum: Spectrum,
    omega: np.ndarray,
    m: int,
    seed: int,
    trial: int,
    noise: float,
    label: str = "",
    rank_rtol: float = RANK_RTOL,
) -> SampleRow:
    rng = Prng.substream(seed, trial)
    n = spectrum.n
    plan = None
    for _ in range(MAX_PLAN_ATTEMPTS):
        candidate = make_plan(spectrum, omega, rng.sample_without_replacement(n, m), rank_rtol)
        if candidate.full_rank:
            plan = candidate
            break
    nan = float("nan")
    if plan is None:
        return SampleRow(label, trial, m, nan, nan, nan, nan, nan, 1)
    c = rng.complex_normals(omega.size)
    x = plan.v_omega @ c
    x = x / np.linalg.norm(x)
    eta = rng.complex_normals(m) * (noise / expected_norm(m))
    eta_norm = float(np.linalg.norm(eta))
    result = recover(plan, x[plan.samples] + eta, eta_norm=eta_norm)
    rel_error = float(np.linalg.norm(result.x_hat - x) / np.linalg.norm(x))
    bound = plan.vnorm * eta_norm / plan.gamma
    if not bound_holds(rel_error, bound):
        raise ConsistencyError(
            f"{label} trial {trial}: recovery error {rel_error:.6e} exceeds noise bound {bound:.6e}"
        )
    return SampleRow(label, trial, m, plan.gamma, plan.vnorm, eta_norm, rel_error, bound, 0)


def cmd_sample(cfg: ExperimentConfig) -> list[SampleRow]:
    cfg.validate(needs_seed=True)
    rows: list[SampleRow] = []
    for kind, g in build_graphs(cfg):
        spec = _spectrum(cfg, g)
        k = min(cfg.k, spec.n)
        m = cfg.m
        if not k <= m <= spec.n:
            raise ConfigError(f"sample set size {m} must lie in [{k}, {spec.n}]")
        omega = lowest_band(spec, k)
        rows += _run_trials(
            lambda t: sample_trial(spec, omega, m, cfg.seed, t, cfg.noise, kind, cfg.rank_rtol),
            cfg.trials,
            cfg.jobs,
        )
    _maybe_write(cfg, "sample.csv", SAMPLE_HEADER, [r.fields() for r in rows])
    return rows


COMMANDS = {
    "table1": cmd_table1,
    "spectra": cmd_spectra,
    "denoise": cmd_denoise,
    "sample": cmd_sample,
}
