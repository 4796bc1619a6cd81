"""Dephasing representation: observables, states, signals, crossings."""

import numpy as np
import pytest

from rmt_eq import dephasing as dph
from rmt_eq.errors import InvalidArgumentError, UndefinedDispersionError
from rmt_eq.gue import Spectrum, eigendecompose, sample_gue
from rmt_eq.rng import RngStream, derive_sample_seed


def _identity_spectrum(energies):
    energies = np.asarray(energies, dtype=np.float64)
    return Spectrum(energies=energies, eigenvectors=np.eye(energies.size, dtype=complex))


def _sampled_instance(size, seed, kind=dph.StateKind.HAAR_RANDOM):
    n = 2 ** size
    sigma = 1.0 / np.sqrt(n)
    stream = RngStream(seed)
    spec = eigendecompose(sample_gue(n, sigma, stream))
    state = dph.initial_state(kind, spec, stream)
    return dph.dephasing_data(spec, dph.bulk_magnetisation(size), state), sigma


# --- observables -----------------------------------------------------------

def test_bulk_magnetisation_small():
    one = dph.bulk_magnetisation(1)
    assert np.array_equal(np.diag(one.matrix).real, [1.0, -1.0])
    assert one.delta_a == 2.0
    two = dph.bulk_magnetisation(2)
    assert np.array_equal(np.diag(two.matrix).real, [2.0, 0.0, 0.0, -2.0])
    assert two.delta_a == 4.0


def test_bulk_magnetisation_multiplicities():
    obs = dph.bulk_magnetisation(3)
    values = np.diag(obs.matrix).real
    assert values.sum() == 0.0
    counts = {v: int((values == v).sum()) for v in (-3, -1, 1, 3)}
    assert counts == {3: 1, 1: 3, -1: 3, -3: 1}


def test_observable_rejects_identity_multiple():
    with pytest.raises(InvalidArgumentError):
        dph.Observable.from_matrix(2.5 * np.eye(4))
    with pytest.raises(InvalidArgumentError):
        dph.Observable(matrix=np.array([[0.0, 1.0], [0.0, 0.0]]), delta_a=1.0)


def test_observable_from_matrix_range():
    obs = dph.Observable.from_matrix(np.diag([3.0, -1.0, 0.5]))
    assert obs.delta_a == pytest.approx(4.0)


# --- initial states --------------------------------------------------------

def test_basis_all_up_trivial_basis():
    spec = _identity_spectrum([0.0, 1.0, 2.0])
    state = dph.initial_state(dph.StateKind.BASIS_ALL_UP, spec)
    assert np.allclose(state.coefficients, [1, 0, 0])


def test_haar_state_normalized():
    spec = _identity_spectrum(np.arange(8.0))
    for seed in range(5):
        state = dph.initial_state(dph.StateKind.HAAR_RANDOM, spec, RngStream(seed))
        assert abs(np.sum(np.abs(state.coefficients) ** 2) - 1.0) <= 1e-12


def test_haar_mean_effective_dimension():
    # Haar average of the inverse participation ratio: d_eff ~ (N+1)/2
    n = 16
    spec = _identity_spectrum(np.arange(float(n)))
    stream = RngStream(314)
    deffs = []
    for _ in range(1000):
        state = dph.initial_state(dph.StateKind.HAAR_RANDOM, spec, stream)
        deffs.append(1.0 / np.sum(np.abs(state.coefficients) ** 4))
    mean = np.mean(deffs)
    assert abs(mean - (n + 1) / 2) <= 0.05 * (n + 1) / 2


def test_state_norm_validated():
    with pytest.raises(InvalidArgumentError):
        dph.InitialState(coefficients=np.array([1.0, 0.5]), source_kind=dph.StateKind.HAAR_RANDOM)


# --- dephasing data --------------------------------------------------------

def test_hand_worked_two_level_instance():
    spec = _identity_spectrum([-1.0, 1.0])
    obs = dph.Observable(matrix=np.array([[0, 1], [1, 0]], dtype=complex), delta_a=2.0)
    state = dph.InitialState(coefficients=np.array([1.0, 1.0]) / np.sqrt(2),
                             source_kind=dph.StateKind.HAAR_RANDOM)
    data = dph.dephasing_data(spec, obs, state)
    assert data.amplitudes[0, 1] == pytest.approx(0.25)
    assert data.amplitudes[1, 0] == pytest.approx(0.25)
    assert data.relevances[0, 1] == pytest.approx(0.5)
    assert data.a_eq == pytest.approx(0.0)
    assert data.g2_inf == pytest.approx(1 / 8)
    assert data.d_eff == pytest.approx(2.0)
    assert dph.gap_dispersion(data) == pytest.approx(4.0)
    assert dph.teq_estimate(4.0) == pytest.approx(np.pi / 4)


def test_stationary_state_all_amplitudes_vanish():
    spec = _identity_spectrum([-1.0, 0.5, 2.0])
    obs = dph.Observable.from_matrix(np.diag([1.0, 0.0, -1.0]))
    state = dph.InitialState(coefficients=np.array([0.0, 1.0, 0.0], dtype=complex),
                             source_kind=dph.StateKind.BASIS_ALL_UP)
    data = dph.dephasing_data(spec, obs, state)
    assert np.all(data.amplitudes == 0.0)
    assert data.g2_inf == 0.0
    assert data.d_eff == pytest.approx(1.0)
    with pytest.raises(UndefinedDispersionError):
        dph.gap_dispersion(data)


def test_dimension_mismatch_rejected():
    spec = _identity_spectrum([-1.0, 1.0])
    obs = dph.bulk_magnetisation(2)
    state = dph.InitialState(coefficients=np.array([1.0, 0.0], dtype=complex),
                             source_kind=dph.StateKind.BASIS_ALL_UP)
    with pytest.raises(InvalidArgumentError):
        dph.dephasing_data(spec, obs, state)


def test_sampled_instance_invariants():
    for seed in range(4):
        data, _ = _sampled_instance(3, derive_sample_seed(55, seed))
        nu = data.amplitudes
        assert np.abs(nu - nu.conj().T).max() <= 1e-14
        assert np.all(np.diag(nu) == 0.0)
        assert abs(data.relevances.sum() - 1.0) <= 1e-12
        assert 1.0 <= data.d_eff <= data.dim
        assert data.g2_inf <= 1.0 / data.d_eff + 1e-12
        mean_gap = float(np.sum(data.relevances * data.gaps))
        sigma_sq = dph.gap_dispersion(data)
        assert abs(mean_gap) <= 1e-10 * max(1.0, sigma_sq)


def test_uniform_probabilities_maximize_d_eff():
    n = 8
    spec = _identity_spectrum(np.arange(float(n)))
    state = dph.InitialState(coefficients=np.full(n, 1 / np.sqrt(n), dtype=complex),
                             source_kind=dph.StateKind.HAAR_RANDOM)
    obs = dph.bulk_magnetisation(3)
    data = dph.dephasing_data(spec, obs, state)
    assert data.d_eff == pytest.approx(float(n))


# --- gap dispersion on constructed relevance patterns ----------------------

def _manual_data(energies, amplitudes, delta_a=1.0):
    energies = np.asarray(energies, dtype=np.float64)
    amplitudes = np.asarray(amplitudes, dtype=np.complex128)
    weights = np.abs(amplitudes) ** 2
    g2 = float(weights.sum())
    return dph.DephasingData(
        amplitudes=amplitudes, gaps=energies[None, :] - energies[:, None],
        relevances=weights / g2 if g2 else weights, a_eq=0.0, g2_inf=g2,
        d_eff=float(len(energies)), delta_a=delta_a, energies=energies)


def test_three_level_uniform_relevances():
    nu = np.full((3, 3), 1 / 6, dtype=complex)
    np.fill_diagonal(nu, 0.0)
    data = _manual_data([-1.0, 0.0, 1.0], nu)
    # six gaps (+-1, +-1, +-2): mean square 12/6
    assert dph.gap_dispersion(data) == pytest.approx(2.0)
    assert dph.teq_estimate(2.0) == pytest.approx(np.pi / (2 * np.sqrt(2.0)))


def test_concentrated_relevances():
    nu = np.zeros((3, 3), dtype=complex)
    nu[0, 2] = nu[2, 0] = 0.3
    data = _manual_data([-1.0, 0.0, 2.0], nu)
    assert dph.gap_dispersion(data) == pytest.approx(9.0)


def test_teq_estimate_validates():
    with pytest.raises(InvalidArgumentError):
        dph.teq_estimate(0.0)
    assert dph.teq_estimate(np.pi ** 2 / 4) == pytest.approx(1.0)


# --- time signal -----------------------------------------------------------

def test_zero_amplitudes_zero_trace():
    data = _manual_data([0.0, 1.0], np.zeros((2, 2), dtype=complex))
    trace = dph.time_signal(data, np.linspace(0, 5, 11))
    assert np.all(trace.values == 0.0)


def test_signal_initial_value():
    for seed in (3, 12):
        data, _ = _sampled_instance(3, derive_sample_seed(808, seed))
        trace = dph.time_signal(data, np.array([0.0, 0.1]))
        assert trace.values[0] == pytest.approx(float(data.amplitudes.sum().real), abs=1e-10)


def test_single_pair_cosine_closed_form():
    g = 1.7
    theta = 0.6
    nu = np.zeros((2, 2), dtype=complex)
    nu[0, 1] = 0.2 * np.exp(1j * theta)
    nu[1, 0] = np.conj(nu[0, 1])
    data = _manual_data([-g / 2, g / 2], nu)
    ts = np.linspace(0.0, 6.0, 41)
    trace = dph.time_signal(data, ts)
    assert np.allclose(trace.values, 2 * 0.2 * np.cos(g * ts + theta), atol=1e-12)


def test_times_must_ascend():
    data = _manual_data([0.0, 1.0], np.zeros((2, 2), dtype=complex))
    with pytest.raises(InvalidArgumentError):
        dph.time_signal(data, np.array([0.0, 2.0, 1.0]))
    with pytest.raises(InvalidArgumentError):
        dph.time_signal(data, np.array([-1.0, 1.0]))


def test_broken_conjugate_symmetry_reported():
    # amplitudes without nu_ij = conj(nu_ji) produce a complex signal; the
    # imaginary-residue guard must catch it instead of silently truncating
    from rmt_eq.errors import NumericFailureError
    nu = np.zeros((2, 2), dtype=complex)
    nu[0, 1] = 0.3          # missing the mirrored conjugate entry
    data = _manual_data([-1.0, 1.0], nu)
    with pytest.raises(NumericFailureError):
        dph.time_signal(data, np.linspace(0.0, 2.0, 9))


def test_first_crossing_requires_positive_threshold():
    data = _manual_data([0.0, 1.0], np.zeros((2, 2), dtype=complex))
    with pytest.raises(InvalidArgumentError):
        dph.first_crossing(data, np.linspace(0.0, 1.0, 5))


def test_signal_matches_direct_evolution():
    # independent oracle: evolve the state and take expectation values directly
    size, seed = 3, derive_sample_seed(606, 0)
    n = 2 ** size
    sigma = 1.0 / np.sqrt(n)
    stream = RngStream(seed)
    spec = eigendecompose(sample_gue(n, sigma, stream))
    state = dph.initial_state(dph.StateKind.HAAR_RANDOM, spec, stream)
    obs = dph.bulk_magnetisation(size)
    data = dph.dephasing_data(spec, obs, state)
    ts = np.linspace(0.0, 4.0, 23)
    trace = dph.time_signal(data, ts)
    v, c = spec.eigenvectors, state.coefficients
    for t, g in zip(ts, trace.values):
        psi_t = v @ (np.exp(-1j * spec.energies * t) * c)
        direct = (psi_t.conj() @ (obs.matrix @ psi_t)).real
        assert g == pytest.approx((direct - data.a_eq) / obs.delta_a, abs=1e-12)


# --- first crossing --------------------------------------------------------

def test_first_crossing_single_pair_closed_form():
    g = 2.0
    nu = np.zeros((2, 2), dtype=complex)
    nu[0, 1] = nu[1, 0] = 0.25
    data = _manual_data([-g / 2, g / 2], nu)
    times = np.linspace(0.0, 3.0, 301)
    t_fc = dph.first_crossing(data, times)
    assert t_fc == pytest.approx(np.pi / (4 * g), rel=1e-5)


def test_first_crossing_immediate_when_at_equilibrium():
    # amplitudes with opposing phases: |g(0)|^2 = 0 < g2_inf
    nu = np.zeros((4, 4), dtype=complex)
    nu[0, 1] = nu[1, 0] = 0.1
    nu[2, 3] = nu[3, 2] = -0.1
    data = _manual_data([0.0, 1.0, 2.0, 4.5], nu)
    times = np.linspace(0.0, 5.0, 100)
    assert dph.first_crossing(data, times) == 0.0


def test_first_crossing_censored():
    g = 2.0
    nu = np.zeros((2, 2), dtype=complex)
    nu[0, 1] = nu[1, 0] = 0.25
    data = _manual_data([-g / 2, g / 2], nu)
    times = np.linspace(0.0, 0.1, 8)  # horizon before pi/(4g) = 0.39
    assert dph.first_crossing(data, times) is None


def test_first_crossing_grid_refinement_oracle():
    sigma_rule = lambda n: 1.0 / np.sqrt(n)
    for seed_idx in range(3):
        size = 4
        n = 2 ** size
        stream = RngStream(derive_sample_seed(424242, seed_idx))
        spec = eigendecompose(sample_gue(n, sigma_rule(n), stream))
        state = dph.initial_state(dph.StateKind.BASIS_ALL_UP, spec)
        data = dph.dephasing_data(spec, dph.bulk_magnetisation(size), state)
        coarse = dph.TimeGridSpec().times(n, sigma_rule(n))
        fine = dph.TimeGridSpec(points_per_teq=640).times(n, sigma_rule(n))
        t1 = dph.first_crossing(data, coarse)
        t2 = dph.first_crossing(data, fine)
        assert t1 is not None and t2 is not None
        assert abs(t1 - t2) <= 1e-6


# --- equilibrium-fluctuation fractions -------------------------------------

def test_fraction_helpers_trivial_cases():
    empty = dph.SignalTrace(times=np.array([]), values=np.array([]), sq_values=np.array([]))
    assert dph.reimann_violation_fraction(empty, 4.0) == 0.0
    assert dph.bound_crossing_fraction(empty, 4.0) == 0.0
    zero = dph.SignalTrace(times=np.arange(5.0), values=np.zeros(5), sq_values=np.zeros(5))
    assert dph.reimann_violation_fraction(zero, 1.0) == 0.0
    assert dph.bound_crossing_fraction(zero, 8.0) == 0.0
    const = dph.SignalTrace(times=np.arange(4.0), values=np.full(4, 0.5),
                            sq_values=np.full(4, 2.0 / 8.0))
    assert dph.bound_crossing_fraction(const, 8.0) == 1.0
    with pytest.raises(InvalidArgumentError):
        dph.bound_crossing_fraction(zero, 0.5)


def test_window_average_approaches_g2_inf():
    # dephasing identity: the time average of |g|^2 over [0, 200/sigma_G]
    # approaches its infinite-time value g2_inf for N >= 16.  Individual
    # samples can converge arbitrarily slowly (the rate is set by the
    # closest pair of distinct gaps), so the 10% tolerance is pinned on the
    # median over a fixed batch of instances.
    for size in (4, 5):
        devs = []
        for seed_idx in range(12):
            data, _ = _sampled_instance(size, derive_sample_seed(1717, 100 + seed_idx))
            sigma_g = np.sqrt(dph.gap_dispersion(data))
            times = np.linspace(0.0, 200.0 / sigma_g, 6001)
            trace = dph.time_signal(data, times)
            window_avg = float(trace.sq_values.mean())
            devs.append(abs(window_avg - data.g2_inf) / data.g2_inf)
        assert float(np.median(devs)) <= 0.10


def test_grid_spec_shape():
    times = dph.TimeGridSpec().times(16, 0.25)
    t_pred = dph.predicted_teq_scale(16, 0.25)
    assert times[0] == 0.0
    assert times[-1] <= 40.0 * t_pred + 1e-12
    assert len(times) == 64 * 40 + 1
    assert np.allclose(np.diff(times), t_pred / 64)
