"""Reproducible Monte Carlo over GUE samples and its aggregation.

Each sample is an independent task seeded by derive_sample_seed(master,
global_index); the global index is size_position * samples_per_size +
sample_number, so adding sizes to an experiment never reseeds existing
cells.  Aggregation happens in index order after all tasks finish, which
makes the output a pure function of the configuration, independent of the
worker count.
"""

from __future__ import annotations

import enum
import math
import multiprocessing
from dataclasses import dataclass, field

import numpy as np

from . import dephasing as dph
from . import gue
from .errors import InvalidArgumentError
from .rng import RngStream, derive_sample_seed


class SigmaRule(enum.Enum):
    FIXED = "fixed"
    INVERSE_SQRT_N = "inverse_sqrt_n"


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of one ensemble experiment.

    sizes are qubit counts L (dimension N = 2^L).  sigma_rule INVERSE_SQRT_N
    sets sigma = 1/sqrt(N) per size, keeping the spectral support
    size-independent; FIXED uses the given sigma everywhere.
    """

    sizes: tuple = (2, 3, 4, 5, 6, 7, 8)
    sigma_rule: SigmaRule = SigmaRule.INVERSE_SQRT_N
    sigma: float | None = None
    samples_per_size: int = 200
    state_kind: dph.StateKind = dph.StateKind.HAAR_RANDOM
    grid: dph.TimeGridSpec = field(default_factory=dph.TimeGridSpec)
    master_seed: int = 0
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(self.sizes))
        if not self.sizes or any(s < 1 for s in self.sizes):
            raise InvalidArgumentError("sizes must be a nonempty list of qubit counts >= 1")
        if any(2 ** s < 2 for s in self.sizes):
            raise InvalidArgumentError("every size must give dimension >= 2")
        if self.samples_per_size < 1:
            raise InvalidArgumentError("samples_per_size must be >= 1")
        if self.workers < 1:
            raise InvalidArgumentError("workers must be >= 1")
        if self.sigma_rule is SigmaRule.FIXED and not (self.sigma and self.sigma > 0):
            raise InvalidArgumentError("sigma_rule 'fixed' requires a positive sigma")

    def sigma_for(self, n: int) -> float:
        if self.sigma_rule is SigmaRule.FIXED:
            return float(self.sigma)
        return 1.0 / math.sqrt(n)


@dataclass(frozen=True)
class SampleRecord:
    """Per-sample outcome.  Censored samples (no crossing before t_max) keep
    t_fc = None; degenerate-spectrum rejections carry only identification
    fields.  Nothing is silently dropped."""

    size: int
    n: int
    index: int
    seed: int
    sigma_g_sq: float | None
    t_fc: float | None
    censored: bool
    d_eff: float | None
    g2_inf: float | None
    bound_fraction: float | None
    rejected_degenerate: bool


@dataclass(frozen=True)
class SizeSummary:
    """Per-size aggregates; statistics that are undefined for the run
    (no completed samples, zero mean crossing time) are None."""

    size: int
    n: int
    sigma: float
    mean_t_fc: float | None
    se_t_fc: float | None
    mean_d_eff: float | None
    mean_sigma_g_sq: float | None
    mean_g2_inf: float | None
    mean_bound_fraction: float | None
    c_num: float | None
    n_completed: int
    n_censored: int
    n_rejected_degenerate: int


@dataclass(frozen=True)
class EnsembleSummary:
    per_size: tuple


def c_num(n: int, sigma: float, mean_t_fc: float) -> float:
    """Measured proportionality constant mean_t_fc * 2 sqrt(2 sigma^2 (N+1)) / pi."""
    if n < 2 or not sigma > 0 or not mean_t_fc > 0:
        raise InvalidArgumentError("c_num needs n >= 2, sigma > 0 and a positive mean crossing time")
    return float(mean_t_fc * 2.0 * np.sqrt(2.0 * sigma * sigma * (n + 1)) / np.pi)


def run_single_sample(size: int, index: int, seed: int, sigma: float,
                      state_kind: dph.StateKind, grid: dph.TimeGridSpec) -> SampleRecord:
    """One full pipeline pass: sample, diagonalize, dephase, measure."""
    n = 2 ** size
    stream = RngStream(seed)
    h = gue.sample_gue(n, sigma, stream)
    spectrum = gue.eigendecompose(h, seed=seed)
    if gue.is_degenerate(spectrum, sigma):
        return SampleRecord(size=size, n=n, index=index, seed=seed, sigma_g_sq=None,
                            t_fc=None, censored=False, d_eff=None, g2_inf=None,
                            bound_fraction=None, rejected_degenerate=True)
    obs = dph.bulk_magnetisation(size)
    state = dph.initial_state(state_kind, spectrum, stream)
    data = dph.dephasing_data(spectrum, obs, state)
    sigma_g_sq = dph.gap_dispersion(data)
    times = grid.times(n, sigma)
    trace = dph.time_signal(data, times)
    bound_fraction = dph.bound_crossing_fraction(trace, data.d_eff)
    t_fc = dph.first_crossing(data, times, trace.sq_values)
    return SampleRecord(size=size, n=n, index=index, seed=seed, sigma_g_sq=sigma_g_sq,
                        t_fc=t_fc, censored=t_fc is None, d_eff=data.d_eff,
                        g2_inf=data.g2_inf, bound_fraction=bound_fraction,
                        rejected_degenerate=False)


def _run_task(task) -> SampleRecord:
    size, index, seed, sigma, state_kind, grid = task
    return run_single_sample(size, index, seed, sigma, state_kind, grid)


def run_ensemble(cfg: ExperimentConfig):
    """Run the whole experiment; returns (records, EnsembleSummary).

    Record order (and content, bit for bit) depends only on the
    configuration, never on the worker count.
    """
    tasks = []
    for pos, size in enumerate(cfg.sizes):
        n = 2 ** size
        sigma = cfg.sigma_for(n)
        for j in range(cfg.samples_per_size):
            index = pos * cfg.samples_per_size + j
            seed = derive_sample_seed(cfg.master_seed, index)
            tasks.append((size, index, seed, sigma, cfg.state_kind, cfg.grid))
    if cfg.workers == 1:
        records = [_run_task(t) for t in tasks]
    else:
        with multiprocessing.Pool(cfg.workers) as pool:
            records = pool.map(_run_task, tasks, chunksize=8)
    per_size = []
    m = cfg.samples_per_size
    for pos, size in enumerate(cfg.sizes):
        chunk = records[pos * m:(pos + 1) * m]
        per_size.append(_summarize_size(size, cfg.sigma_for(2 ** size), chunk))
    return records, EnsembleSummary(per_size=tuple(per_size))


def _summarize_size(size: int, sigma: float, records) -> SizeSummary:
    n = 2 ** size
    usable = [r for r in records if not r.rejected_degenerate]
    completed = [r for r in usable if not r.censored]
    t_fc = np.array([r.t_fc for r in completed], dtype=np.float64)
    mean_t_fc = float(t_fc.mean()) if t_fc.size else None
    se_t_fc = float(t_fc.std(ddof=1) / np.sqrt(t_fc.size)) if t_fc.size > 1 else None
    mean_d_eff = float(np.mean([r.d_eff for r in usable])) if usable else None
    mean_sg = float(np.mean([r.sigma_g_sq for r in usable])) if usable else None
    mean_g2 = float(np.mean([r.g2_inf for r in usable])) if usable else None
    mean_bf = float(np.mean([r.bound_fraction for r in usable])) if usable else None
    c = c_num(n, sigma, mean_t_fc) if t_fc.size and mean_t_fc > 0 else None
    return SizeSummary(size=size, n=n, sigma=sigma, mean_t_fc=mean_t_fc, se_t_fc=se_t_fc,
                       mean_d_eff=mean_d_eff, mean_sigma_g_sq=mean_sg, mean_g2_inf=mean_g2,
                       mean_bound_fraction=mean_bf, c_num=c, n_completed=len(completed),
                       n_censored=len(usable) - len(completed),
                       n_rejected_degenerate=len(records) - len(usable))


# ---------------------------------------------------------------------------
# Spectral moments and gap histograms


def mc_gap_moment(n: int, sigma: float, m: int, power: int, master_seed: int = 0):
    """Monte Carlo mean and standard error of sum_{i != j} G^power / (N(N-1)).

    power 2 targets predicted_gap_dispersion; power 4 times N(N-1) targets
    the fourth-moment closed forms.
    """
    if n < 2 or m < 2:
        raise InvalidArgumentError("need n >= 2 and m >= 2")
    if power not in (2, 4):
        raise InvalidArgumentError(f"power must be 2 or 4, got {power}")
    pairs = n * (n - 1)
    vals = np.empty(m)
    for i in range(m):
        stream = RngStream(derive_sample_seed(master_seed, i))
        h = gue.sample_gue(n, sigma, stream)
        e = np.linalg.eigvalsh(h)
        g = e[None, :] - e[:, None]
        vals[i] = (g ** power).sum() / pairs
    return float(vals.mean()), float(vals.std(ddof=1) / np.sqrt(m))


def mc_uniform_dispersion_samples(n: int, sigma: float, m: int, master_seed: int = 0) -> np.ndarray:
    """Per-sample uniform-relevance dispersions sum_{i != j} G^2 / (N(N-1))."""
    if n < 2 or m < 1:
        raise InvalidArgumentError("need n >= 2 and m >= 1")
    pairs = n * (n - 1)
    vals = np.empty(m)
    for i in range(m):
        stream = RngStream(derive_sample_seed(master_seed, i))
        h = gue.sample_gue(n, sigma, stream)
        e = np.linalg.eigvalsh(h)
        g = e[None, :] - e[:, None]
        vals[i] = (g ** 2).sum() / pairs
    return vals


def bootstrap_ratio(values: np.ndarray, resamples: int = 200, seed: int = 0):
    """Variance-to-squared-mean ratio of `values` with a bootstrap standard error.

    Nonparametric bootstrap: `resamples` resamples with replacement, seeded
    through the frozen generator.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.size < 2:
        raise InvalidArgumentError("need at least two values")
    ratio = float(values.var(ddof=1) / values.mean() ** 2)
    stream = RngStream(seed)
    reps = np.empty(resamples)
    for b in range(resamples):
        u = stream.random_block(values.size)
        idx = np.minimum((u * values.size).astype(np.int64), values.size - 1)
        sample = values[idx]
        reps[b] = sample.var(ddof=1) / sample.mean() ** 2
    return ratio, float(reps.std(ddof=1))


@dataclass(frozen=True)
class Histogram:
    """Normalized density histogram: sum(density * width) == 1."""

    edges: np.ndarray
    densities: np.ndarray
    count: int

    def __post_init__(self):
        widths = np.diff(self.edges)
        total = float(np.sum(self.densities * widths))
        if self.count and abs(total - 1.0) > 1e-9:
            raise InvalidArgumentError(f"histogram normalization off by {abs(total - 1.0):.3e}")


def all_pair_gaps(spectra) -> np.ndarray:
    """Absolute gaps |E_i - E_j| over all pairs i < j of every spectrum."""
    chunks = []
    for spec in spectra:
        e = spec.energies if isinstance(spec, gue.Spectrum) else np.asarray(spec)
        n = e.size
        iu = np.triu_indices(n, 1)
        chunks.append(np.abs(e[None, :] - e[:, None])[iu])
    return np.concatenate(chunks) if chunks else np.empty(0)


def gap_histogram(spectra, bins: int, hist_range) -> Histogram:
    """All-pairs absolute-gap density over one or more spectra."""
    values = all_pair_gaps(spectra)
    if values.size == 0:
        raise InvalidArgumentError("gap histogram needs at least one spectrum with n >= 2")
    densities, edges = np.histogram(values, bins=bins, range=hist_range, density=True)
    return Histogram(edges=edges, densities=densities, count=int(values.size))


def sample_spectra(n: int, sigma: float, m: int, master_seed: int = 0):
    """m independent GUE spectra with the standard per-sample seeding."""
    out = []
    for i in range(m):
        stream = RngStream(derive_sample_seed(master_seed, i))
        out.append(gue.eigendecompose(gue.sample_gue(n, sigma, stream)))
    return out


def unimodality(hist: Histogram, window: int):
    """Count strict local maxima of the window-smoothed densities.

    The densities are reflected at both ends before the moving average so
    edge bins are not biased toward zero.  Returns (is_unimodal, n_modes).
    """
    if window < 1 or window % 2 == 0:
        raise InvalidArgumentError(f"window must be a positive odd integer, got {window}")
    d = hist.densities
    if window > 1:
        pad = window // 2
        padded = np.concatenate([d[pad:0:-1], d, d[-2:-2 - pad:-1]])
        smooth = np.convolve(padded, np.full(window, 1.0 / window), mode="valid")
    else:
        smooth = d
    interior = (smooth[1:-1] > smooth[:-2]) & (smooth[1:-1] > smooth[2:])
    n_modes = int(interior.sum())
    if smooth.size >= 2 and smooth[0] > smooth[1]:
        n_modes += 1
    if smooth.size >= 2 and smooth[-1] > smooth[-2]:
        n_modes += 1
    return n_modes == 1, n_modes


def l1_distance(a: Histogram, b: Histogram) -> float:
    """L1 distance between two densities on identical bins."""
    if not np.array_equal(a.edges, b.edges):
        raise InvalidArgumentError("histograms must share bin edges")
    return float(np.sum(np.abs(a.densities - b.densities) * np.diff(a.edges)))
