"""Dephasing representation of observable dynamics.

An observable A, an initial state written in the energy eigenbasis, and the
spectrum together determine off-diagonal amplitudes nu_ij whose phases rotate
at the gap frequencies G_ij = E_j - E_i.  The normalized deviation of <A>
from its equilibrium value is

    g(t) = sum_{i != j} nu_ij exp(i G_ij t),

which is real for Hermitian A.  Everything downstream (gap dispersion,
equilibration-time estimates, first-crossing measurement, bound fractions)
is computed from this representation; no density matrix is ever evolved.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, NumericFailureError, UndefinedDispersionError
from .gue import Spectrum
from .rng import RngStream

#: Largest tolerated imaginary residue of the raw complex signal.
IMAG_TOL = 1e-9

#: Relative time tolerance of the first-crossing bisection refinement.
CROSSING_RTOL = 1e-6


class StateKind(enum.Enum):
    BASIS_ALL_UP = "basis_all_up"
    HAAR_RANDOM = "haar"


@dataclass(frozen=True)
class Observable:
    """Hermitian observable in the computational (site) basis.

    delta_a is the spectral range a_max - a_min, used to normalize the time
    signal; construction fails for multiples of the identity.
    """

    matrix: np.ndarray
    delta_a: float

    def __post_init__(self):
        m = self.matrix
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidArgumentError(f"observable must be square, got shape {m.shape}")
        if np.abs(m - m.conj().T).max() != 0.0:
            raise InvalidArgumentError("observable is not exactly Hermitian")
        if not self.delta_a > 0:
            raise InvalidArgumentError("observable spectral range must be positive "
                                       "(multiples of the identity are not observables here)")

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "Observable":
        matrix = np.asarray(matrix, dtype=np.complex128)
        evals = np.linalg.eigvalsh((matrix + matrix.conj().T) / 2)
        return cls(matrix=matrix, delta_a=float(evals[-1] - evals[0]))


def bulk_magnetisation(n_spins: int) -> Observable:
    """Total z magnetisation of n_spins qubits: sum of local sigma_z terms.

    Diagonal in the computational basis; basis state b has value
    (number of 0 bits) - (number of 1 bits).  Spectral range is 2 * n_spins.
    """
    if n_spins < 1:
        raise InvalidArgumentError("need at least one spin")
    dim = 1 << n_spins
    basis = np.arange(dim, dtype=np.uint64)
    ones = np.zeros(dim, dtype=np.int64)
    for bit in range(n_spins):
        ones += (basis >> np.uint64(bit)).astype(np.int64) & 1
    values = (n_spins - 2 * ones).astype(np.float64)
    return Observable(matrix=np.diag(values).astype(np.complex128), delta_a=2.0 * n_spins)


@dataclass(frozen=True)
class InitialState:
    """Pure state as coefficients over the energy eigenbasis."""

    coefficients: np.ndarray
    source_kind: StateKind

    def __post_init__(self):
        norm = float(np.sum(np.abs(self.coefficients) ** 2))
        if abs(norm - 1.0) > 1e-12:
            raise InvalidArgumentError(f"state norm^2 deviates from 1 by {abs(norm - 1.0):.3e}")


def initial_state(kind: StateKind, spectrum: Spectrum, rng: RngStream | None = None) -> InitialState:
    """Build an initial state and rotate it into the eigenbasis.

    BASIS_ALL_UP: the site-basis vector e_0 (all spins up), far from
    equilibrium for magnetisation-like observables.
    HAAR_RANDOM: i.i.d. complex Gaussian vector, normalized; draws 2N
    Gaussians interleaved as (re, im) per component.
    """
    v = spectrum.eigenvectors
    n = spectrum.dim
    if kind is StateKind.BASIS_ALL_UP:
        c = v.conj().T[:, 0].copy()
    elif kind is StateKind.HAAR_RANDOM:
        if rng is None:
            raise InvalidArgumentError("HAAR_RANDOM requires an RngStream")
        z = rng.standard_normal(2 * n)
        psi = z[0::2] + 1j * z[1::2]
        psi /= np.linalg.norm(psi)
        c = v.conj().T @ psi
    else:
        raise InvalidArgumentError(f"unknown state kind {kind!r}")
    c /= np.sqrt(np.sum(np.abs(c) ** 2))
    return InitialState(coefficients=c, source_kind=kind)


@dataclass(frozen=True)
class DephasingData:
    """Amplitudes, gaps, and relevances of one (H, A, psi0) instance.

    amplitudes[i, j] = c_j^* A~_ji c_i / delta_a for i != j (zero diagonal),
    with A~ the observable in the energy eigenbasis.  relevances are the
    normalized |amplitudes|^2.  g2_inf = sum |amplitudes|^2 is the exact
    infinite-time average of |g(t)|^2 for nondegenerate gaps, and d_eff is
    the inverse participation ratio of the initial state.
    """

    amplitudes: np.ndarray
    gaps: np.ndarray
    relevances: np.ndarray
    a_eq: float
    g2_inf: float
    d_eff: float
    delta_a: float
    energies: np.ndarray

    @property
    def dim(self) -> int:
        return self.energies.size


def dephasing_data(spectrum: Spectrum, obs: Observable, state: InitialState) -> DephasingData:
    """Assemble the dephasing representation for one instance."""
    n = spectrum.dim
    if obs.matrix.shape[0] != n or state.coefficients.size != n:
        raise InvalidArgumentError(
            f"dimension mismatch: spectrum {n}, observable {obs.matrix.shape[0]}, "
            f"state {state.coefficients.size}")
    v = spectrum.eigenvectors
    c = state.coefficients
    a_eigen = v.conj().T @ (obs.matrix @ v)
    nu = a_eigen.T * np.outer(c, c.conj()) / obs.delta_a
    np.fill_diagonal(nu, 0.0)
    weights = np.abs(nu) ** 2
    g2_inf = float(weights.sum())
    if g2_inf > 0.0:
        relevances = weights / g2_inf
    else:
        relevances = weights
    probs = np.abs(c) ** 2
    a_eq = float(probs @ np.diag(a_eigen).real)
    d_eff = 1.0 / float(np.sum(probs ** 2))
    gap_table = spectrum.energies[None, :] - spectrum.energies[:, None]
    data = DephasingData(
        amplitudes=nu,
        gaps=gap_table,
        relevances=relevances,
        a_eq=a_eq,
        g2_inf=g2_inf,
        d_eff=d_eff,
        delta_a=obs.delta_a,
        energies=spectrum.energies,
    )
    bound = 1.0 / d_eff
    if g2_inf > bound + 1e-12:
        raise NumericFailureError(
            f"equilibrium bound violated: g2_inf={g2_inf:.6e} > 1/d_eff={bound:.6e}")
    return data


def gap_dispersion(data: DephasingData) -> float:
    """Relevance-weighted variance of the gaps, sigma_G^2 = sum q_ij G_ij^2.

    The relevance-weighted mean gap vanishes identically (q is symmetric,
    G antisymmetric); it is recomputed here and checked as a consistency
    guard on the inputs.
    """
    if data.g2_inf == 0.0:
        raise UndefinedDispersionError("all amplitudes vanish; dispersion undefined")
    q, g = data.relevances, data.gaps
    sigma_sq = float(np.sum(q * g * g))
    mean_gap = float(np.sum(q * g))
    if abs(mean_gap) > 1e-10 * max(1.0, sigma_sq):
        raise NumericFailureError(f"relevance-weighted mean gap {mean_gap:.3e} should vanish")
    return sigma_sq


def teq_estimate(sigma_g_sq: float) -> float:
    """Heuristic equilibration time pi / (2 sigma_G)."""
    if not sigma_g_sq > 0:
        raise InvalidArgumentError(f"sigma_G^2 must be positive, got {sigma_g_sq}")
    return float(np.pi / (2.0 * np.sqrt(sigma_g_sq)))


@dataclass(frozen=True)
class TimeGridSpec:
    """Default simulation grid in units of the predicted equilibration time.

    dt = T_pred / points_per_teq and t_max = horizon_teqs * T_pred, with
    T_pred = pi / (2 sqrt(2 sigma^2 (N+1))) so the expected crossing is
    resolved by >= points_per_teq samples and censoring is marginal.
    """

    points_per_teq: int = 64
    horizon_teqs: float = 40.0

    def times(self, n: int, sigma: float) -> np.ndarray:
        t_pred = predicted_teq_scale(n, sigma)
        dt = t_pred / self.points_per_teq
        return np.arange(0.0, self.horizon_teqs * t_pred + dt / 2, dt)


def predicted_teq_scale(n: int, sigma: float) -> float:
    """pi / (2 sqrt(2 sigma^2 (N+1))): the c = 1 equilibration-time scale."""
    if n < 2 or not sigma > 0:
        raise InvalidArgumentError("need n >= 2 and sigma > 0")
    return float(np.pi / (2.0 * np.sqrt(2.0 * sigma * sigma * (n + 1))))


def _raw_signal(data: DephasingData, times: np.ndarray) -> np.ndarray:
    """Complex g(t) on a block of times.

    Evaluated through eigenphases: with u_k(t) = exp(i E_k t),
    sum_{ij} nu_ij exp(i G_ij t) = u(t)^dagger nu u(t), which is O(N^2) per
    time point but runs through one matrix product instead of N^2
    exponentials per point.
    """
    u = np.exp(1j * np.outer(data.energies, times))
    return np.einsum("it,it->t", u.conj(), data.amplitudes @ u)


def _signal_at(data: DephasingData, t: float) -> float:
    u = np.exp(1j * data.energies * t)
    val = complex(np.vdot(u, data.amplitudes @ u))
    return val.real


@dataclass(frozen=True)
class SignalTrace:
    """Sampled real time signal g(t) and its square."""

    times: np.ndarray
    values: np.ndarray
    sq_values: np.ndarray


def time_signal(data: DephasingData, times: np.ndarray) -> SignalTrace:
    """Evaluate g(t) on an ascending nonnegative grid.

    Raises NumericFailureError if the imaginary residue of the raw complex
    signal exceeds IMAG_TOL, which signals broken Hermiticity upstream.
    """
    times = np.asarray(times, dtype=np.float64)
    if times.size and (np.any(np.diff(times) <= 0) or times[0] < 0):
        raise InvalidArgumentError("times must be ascending and nonnegative")
    raw = _raw_signal(data, times)
    imag_max = float(np.abs(raw.imag).max()) if times.size else 0.0
    if imag_max > IMAG_TOL:
        raise NumericFailureError(f"imaginary residue {imag_max:.3e} exceeds {IMAG_TOL}")
    values = raw.real
    return SignalTrace(times=times, values=values, sq_values=values ** 2)


def first_crossing(data: DephasingData, times: np.ndarray,
                   sq_values: np.ndarray | None = None) -> float | None:
    """First time |g(t)|^2 drops to its infinite-time average g2_inf.

    Scans the grid for the first point at or below the threshold and refines
    the bracketing interval by bisection to relative time tolerance
    CROSSING_RTOL.  Returns None (censored) if no grid point crosses before
    t_max.  Ties at grid nodes resolve to the earlier time.
    """
    if not data.g2_inf > 0:
        raise InvalidArgumentError("first crossing needs g2_inf > 0")
    times = np.asarray(times, dtype=np.float64)
    if sq_values is None:
        sq_values = time_signal(data, times).sq_values
    below = sq_values <= data.g2_inf
    if not below.any():
        return None
    idx = int(np.argmax(below))
    if idx == 0:
        return float(times[0])
    lo, hi = float(times[idx - 1]), float(times[idx])
    while (hi - lo) > CROSSING_RTOL * hi:
        mid = 0.5 * (lo + hi)
        if _signal_at(data, mid) ** 2 <= data.g2_inf:
            hi = mid
        else:
            lo = mid
    return hi


def reimann_violation_fraction(trace: SignalTrace, d_eff: float) -> float:
    """Fraction of sampled times with |g(t)| >= d_eff^(-1/3)."""
    if d_eff < 1:
        raise InvalidArgumentError("d_eff must be >= 1")
    if trace.times.size == 0:
        return 0.0
    return float(np.mean(np.abs(trace.values) >= d_eff ** (-1.0 / 3.0)))


def bound_crossing_fraction(trace: SignalTrace, d_eff: float) -> float:
    """Fraction of sampled times with |g(t)|^2 above the equilibrium bound 1/d_eff."""
    if d_eff < 1:
        raise InvalidArgumentError("d_eff must be >= 1")
    if trace.times.size == 0:
        return 0.0
    return float(np.mean(trace.sq_values > 1.0 / d_eff))
