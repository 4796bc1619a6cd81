"""Closed forms against the quadrature oracle, and kernel identities."""

import numpy as np
import pytest

from rmt_eq import analytics as ana
from rmt_eq.errors import InvalidArgumentError


def test_predicted_gap_dispersion_values():
    assert ana.predicted_gap_dispersion(2, 1.0) == pytest.approx(6.0)
    assert ana.predicted_gap_dispersion(3, 0.5) == pytest.approx(2.0)
    assert ana.predicted_gap_dispersion(7, 1.0) == pytest.approx(16.0)
    with pytest.raises(InvalidArgumentError):
        ana.predicted_gap_dispersion(1, 1.0)
    with pytest.raises(InvalidArgumentError):
        ana.predicted_gap_dispersion(4, 0.0)


def test_predicted_teq_values():
    assert ana.predicted_teq(7, 1.0, 1.0) == pytest.approx(np.pi / 8)
    # doubling sigma halves the estimate
    assert ana.predicted_teq(7, 2.0, 1.0) == pytest.approx(np.pi / 16)
    # vanishes with dimension
    assert ana.predicted_teq(2 * 10**6, 1.0, 1.375) < 1e-3 * (np.pi / 2)
    with pytest.raises(InvalidArgumentError):
        ana.predicted_teq(4, 1.0, -1.0)


def test_delta_correction():
    assert ana.delta_correction(2.0, 0.0) == 1.0
    assert ana.delta_correction(1.0, 1.0) == pytest.approx(1.375)
    assert ana.delta_correction(1.0, 0.5) == pytest.approx(1.1875)
    with pytest.raises(InvalidArgumentError):
        ana.delta_correction(0.0, 1.0)
    with pytest.raises(InvalidArgumentError):
        ana.delta_correction(1.0, -0.5)


def test_variance_ratio_bound():
    assert ana.variance_ratio_bound(2) == pytest.approx(1 / 3)
    assert ana.variance_ratio_bound(3) == pytest.approx(0.5)
    assert ana.variance_ratio_bound(10**9) == pytest.approx(1.0, abs=1e-8)


def test_c_analytic_monotone_to_limit():
    values = [ana.c_analytic(n) for n in range(2, 200)]
    assert all(b > a for a, b in zip(values, values[1:]))
    assert ana.c_analytic(3) == pytest.approx(1.1875)
    assert abs(ana.c_analytic(10**7) - ana.C_ANALYTIC_LIMIT) < 1e-6


def test_fourth_moment_closed_forms():
    assert ana.predicted_fourth_moment(2, 1.0) == pytest.approx(48.0)
    assert ana.predicted_fourth_moment(4, 0.5) == pytest.approx(10.0)
    # sigma^4 scaling
    assert ana.predicted_fourth_moment(5, 2.0) == pytest.approx(16 * ana.predicted_fourth_moment(5, 1.0))
    assert ana.exact_fourth_moment(2, 1.0) == pytest.approx(120.0)
    assert ana.exact_fourth_moment(4, 0.5) == pytest.approx(10 * 0.5**4 * 16 * 15)


def test_hermite_pi_basics():
    assert ana.hermite_pi(0, 0.37, 1.0) == pytest.approx((2 * np.pi) ** -0.25)
    assert ana.hermite_pi(1, 0.0, 2.0) == 0.0
    with pytest.raises(InvalidArgumentError):
        ana.hermite_pi(513, 0.0, 1.0)
    with pytest.raises(InvalidArgumentError):
        ana.hermite_pi(2, 0.0, 0.0)


def test_hermite_orthonormality():
    ctx = ana.KernelContext(n_levels=21, sigma=1.0)
    x, w = ana._weighted_nodes(ctx)
    table = ana._hermite_pi_table(21, x, ctx.sigma)
    gram = (table * w) @ table.T
    assert np.abs(gram - np.eye(21)).max() <= 1e-10


def test_hermite_high_order_stable():
    x = np.linspace(-3.0, 3.0, 7)
    vals = ana.hermite_pi(512, x, 1.0)
    assert np.all(np.isfinite(vals))


def test_hermite_overflow_reported():
    # far outside the oscillatory region the recurrence blows up; that must
    # surface as a numeric failure, not as silent inf
    from rmt_eq.errors import NumericFailureError
    with pytest.raises(NumericFailureError):
        ana.hermite_pi(400, 1.0e4, 1.0)


def test_kernel_basics():
    ctx = ana.KernelContext(n_levels=1, sigma=1.0)
    assert ana.kernel(ctx, 0.0, 0.0) == pytest.approx((2 * np.pi) ** -0.5)
    ctx = ana.KernelContext(n_levels=5, sigma=0.8)
    assert ana.kernel(ctx, 0.3, -1.2) == pytest.approx(ana.kernel(ctx, -1.2, 0.3))


def test_kernel_trace_is_level_count():
    for n in (1, 2, 5, 8):
        ctx = ana.KernelContext(n_levels=n, sigma=1.0)
        assert abs(ana.kernel_trace(ctx) - n) <= 1e-10


def test_joint_density_identities():
    ctx = ana.KernelContext(n_levels=4, sigma=1.0)
    assert ana.joint_density(ctx, 0.7, 0.7) == pytest.approx(0.0, abs=1e-12)
    assert ana.joint_density(ctx, 0.3, -0.5) == pytest.approx(ana.joint_density(ctx, -0.5, 0.3))


@pytest.mark.parametrize("n", range(2, 9))
def test_joint_density_normalization(n):
    ctx = ana.KernelContext(n_levels=n, sigma=1.0)
    x, w = ana._weighted_nodes(ctx)
    table = ana._hermite_pi_table(n, x, ctx.sigma)
    s = table.T @ table
    rho = np.diag(s)
    total = float(w @ (np.outer(rho, rho) - s * s) @ w) / (n * (n - 1))
    assert total == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("n", range(2, 9))
@pytest.mark.parametrize("sigma_rule", ["unit", "inv_sqrt_n"])
def test_quadrature_matches_dispersion_closed_form(n, sigma_rule):
    sigma = 1.0 if sigma_rule == "unit" else 1.0 / np.sqrt(n)
    ctx = ana.KernelContext(n_levels=n, sigma=sigma)
    quad = ana.quadrature_gap_dispersion(ctx)
    closed = ana.predicted_gap_dispersion(n, sigma)
    assert abs(quad - closed) <= 1e-8 * closed


def test_quadrature_dispersion_examples():
    assert ana.quadrature_gap_dispersion(ana.KernelContext(2, 1.0)) == pytest.approx(6.0, rel=1e-10)
    assert ana.quadrature_gap_dispersion(ana.KernelContext(5, 1.0)) == pytest.approx(12.0, rel=1e-10)
    assert ana.quadrature_gap_dispersion(
        ana.KernelContext(8, 1.0 / np.sqrt(8))) == pytest.approx(2.25, rel=1e-10)


@pytest.mark.parametrize("n", range(2, 9))
@pytest.mark.parametrize("sigma_rule", ["unit", "inv_sqrt_n"])
def test_quadrature_matches_exact_fourth_moment(n, sigma_rule):
    """The quadrature and the determinantal closed form agree to 1e-7;
    both sit well away from the reference constant 8 sigma^4 N (N+1)."""
    sigma = 1.0 if sigma_rule == "unit" else 1.0 / np.sqrt(n)
    ctx = ana.KernelContext(n_levels=n, sigma=sigma)
    quad = ana.quadrature_fourth_moment(ctx)
    exact = ana.exact_fourth_moment(n, sigma)
    assert abs(quad - exact) <= 1e-7 * exact
    reference = ana.predicted_fourth_moment(n, sigma)
    assert quad / reference == pytest.approx(1.25 * n * (n - 1), rel=1e-6)


def test_kernel_context_validation():
    with pytest.raises(InvalidArgumentError):
        ana.KernelContext(n_levels=0, sigma=1.0)
    with pytest.raises(InvalidArgumentError):
        ana.KernelContext(n_levels=4, sigma=1.0, quadrature_order=10)
    ctx = ana.KernelContext(n_levels=4, sigma=1.0)
    assert ctx.quadrature_order == 24
