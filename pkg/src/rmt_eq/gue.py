"""GUE sampling, Hermitian eigendecomposition, and gap tables."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, NumericFailureError
from .rng import RngStream

#: Samples whose smallest gap falls below DEGENERACY_TOL * sigma are flagged
#: and excluded from first-crossing statistics.
DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition of a Hermitian matrix.

    energies are ascending; eigenvectors[:, k] belongs to energies[k].
    """

    energies: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.energies.size


def sample_gue(n: int, sigma: float, rng: RngStream) -> np.ndarray:
    """Draw one n-by-n GUE matrix with weight exp(-Tr H^2 / (2 sigma^2)).

    Diagonal entries are real N(0, sigma^2); for i < j the real and
    imaginary parts are each N(0, sigma^2 / 2), so E|H_ij|^2 = sigma^2.
    Hermiticity is exact by construction, not up to rounding.

    Draw order (frozen for reproducibility): n Gaussians for the diagonal,
    then (re, im) pairs for the upper triangle in row-major order.
    """
    if n < 1:
        raise InvalidArgumentError(f"matrix dimension must be >= 1, got {n}")
    if not sigma > 0:
        raise InvalidArgumentError(f"sigma must be positive, got {sigma}")
    z = rng.standard_normal(n * n)
    h = np.zeros((n, n), dtype=np.complex128)
    np.fill_diagonal(h, sigma * z[:n])
    if n > 1:
        iu = np.triu_indices(n, 1)
        off = z[n:].reshape(-1, 2) * (sigma / np.sqrt(2.0))
        upper = off[:, 0] + 1j * off[:, 1]
        h[iu] = upper
        h[(iu[1], iu[0])] = np.conj(upper)
    return h


def eigendecompose(h: np.ndarray, seed: int | None = None) -> Spectrum:
    """Diagonalize a Hermitian matrix, validating the result.

    Raises NumericFailureError (carrying `seed` when given) if the solver
    does not converge or the output fails the unitarity / reconstruction
    residual checks.
    """
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise InvalidArgumentError(f"expected a square matrix, got shape {h.shape}")
    if not np.array_equal(h, h.conj().T):
        raise InvalidArgumentError("matrix is not exactly Hermitian")
    try:
        energies, vectors = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise NumericFailureError(f"eigensolver did not converge: {exc}", seed=seed) from exc
    n = h.shape[0]
    unitarity = np.abs(vectors.conj().T @ vectors - np.eye(n)).max()
    if unitarity > 1e-10:
        raise NumericFailureError(f"eigenvector unitarity defect {unitarity:.3e}", seed=seed)
    hnorm = np.linalg.norm(h)
    residual = np.linalg.norm((vectors * energies) @ vectors.conj().T - h)
    if residual > 1e-9 * max(1.0, hnorm):
        raise NumericFailureError(f"reconstruction residual {residual:.3e}", seed=seed)
    return Spectrum(energies=energies, eigenvectors=vectors)


def gaps(spectrum: Spectrum) -> np.ndarray:
    """Antisymmetric table G[i, j] = E_j - E_i of all signed gaps."""
    e = spectrum.energies
    return e[None, :] - e[:, None]


def min_abs_gap(spectrum: Spectrum) -> float:
    """Smallest |E_i - E_j| over i != j (energies are sorted, so adjacent
    differences suffice)."""
    if spectrum.dim < 2:
        return np.inf
    return float(np.diff(spectrum.energies).min())


def is_degenerate(spectrum: Spectrum, sigma: float) -> bool:
    """Flag near-exact level degeneracy relative to the sampling scale."""
    return min_abs_gap(spectrum) < DEGENERACY_TOL * sigma
