"""Equilibration of closed quantum systems with GUE Hamiltonians.

Library layout:

    rng        frozen SplitMix64 + Box-Muller generator, per-sample seeding
    gue        matrix sampling, eigendecomposition, gap tables
    dephasing  observables, initial states, time signal, first crossings
    analytics  closed-form predictions and the Gauss-Hermite kernel oracle
    ensemble   Monte Carlo harness, spectral moments, histograms
    fitting    shifted-exponential fit of the crossing-time constant
    cli        the `rmt-eq` command
"""

from .analytics import (C_ANALYTIC_LIMIT, KernelContext, c_analytic, delta_correction,
                        exact_fourth_moment, hermite_pi, joint_density, kernel,
                        kernel_trace, predicted_fourth_moment, predicted_gap_dispersion,
                        predicted_teq, quadrature_fourth_moment, quadrature_gap_dispersion,
                        variance_ratio_bound)
from .dephasing import (DephasingData, InitialState, Observable, SignalTrace, StateKind,
                        TimeGridSpec, bound_crossing_fraction, bulk_magnetisation,
                        dephasing_data, first_crossing, gap_dispersion, initial_state,
                        predicted_teq_scale, reimann_violation_fraction, teq_estimate,
                        time_signal)
from .ensemble import (EnsembleSummary, ExperimentConfig, Histogram, SampleRecord,
                       SigmaRule, SizeSummary, all_pair_gaps, bootstrap_ratio, c_num,
                       gap_histogram, l1_distance, mc_gap_moment,
                       mc_uniform_dispersion_samples, run_ensemble, run_single_sample,
                       sample_spectra, unimodality)
from .errors import (ConfigError, InvalidArgumentError, NumericFailureError,
                     UndefinedDispersionError)
from .fitting import FitResult, bootstrap_fit, fit_shifted_exponential
from .gue import Spectrum, eigendecompose, gaps, is_degenerate, min_abs_gap, sample_gue
from .rng import RngStream, derive_sample_seed, mix64

__version__ = "0.1.0"
