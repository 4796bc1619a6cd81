"""Self-check suite: quadrature oracles against closed forms, plus identities.

Each check returns (name, passed, detail).  The fourth-moment reference
constant 8 sigma^4 N (N+1) is checked as stated and is expected to fail:
quadrature, Monte Carlo, and the exact determinantal closed form
10 sigma^4 N^2 (N^2 - 1) all agree with each other and disagree with it.
The suite reports both comparisons so the disagreement is visible rather
than hidden.
"""

from __future__ import annotations

import numpy as np

from . import analytics as ana
from . import dephasing as dph
from . import gue
from .rng import RngStream, derive_sample_seed


def run_verification():
    checks = []

    worst = 0.0
    for n in range(2, 9):
        for sigma in (1.0, 1.0 / np.sqrt(n)):
            ctx = ana.KernelContext(n_levels=n, sigma=sigma)
            quad = ana.quadrature_gap_dispersion(ctx)
            closed = ana.predicted_gap_dispersion(n, sigma)
            worst = max(worst, abs(quad - closed) / closed)
    checks.append(("gap-dispersion quadrature vs closed form 2*sigma^2*(N+1)",
                   worst <= 1e-8, f"worst relative error {worst:.3e}"))

    worst_ref, worst_exact = 0.0, 0.0
    for n in range(2, 9):
        for sigma in (1.0, 1.0 / np.sqrt(n)):
            ctx = ana.KernelContext(n_levels=n, sigma=sigma)
            quad = ana.quadrature_fourth_moment(ctx)
            ref = ana.predicted_fourth_moment(n, sigma)
            exact = ana.exact_fourth_moment(n, sigma)
            worst_ref = max(worst_ref, abs(quad - ref) / ref)
            worst_exact = max(worst_exact, abs(quad - exact) / exact)
    checks.append(("fourth-moment quadrature vs reference constant 8*sigma^4*N*(N+1)",
                   worst_ref <= 1e-7, f"worst relative error {worst_ref:.3e}"))
    checks.append(("fourth-moment quadrature vs exact closed form 10*sigma^4*N^2*(N^2-1)",
                   worst_exact <= 1e-7, f"worst relative error {worst_exact:.3e}"))

    worst = 0.0
    for n in range(2, 9):
        ctx = ana.KernelContext(n_levels=n, sigma=1.0)
        worst = max(worst, abs(ana.kernel_trace(ctx) - n))
    checks.append(("kernel trace equals level count", worst <= 1e-10,
                   f"worst absolute error {worst:.3e}"))

    ctx = ana.KernelContext(n_levels=21, sigma=0.8)
    x, w = ana._weighted_nodes(ctx)
    table = ana._hermite_pi_table(21, x, ctx.sigma)
    gram = (table * w) @ table.T
    defect = float(np.abs(gram - np.eye(21)).max())
    checks.append(("Hermite orthonormality for orders <= 20", defect <= 1e-10,
                   f"max |Gram - I| = {defect:.3e}"))

    values = [ana.c_analytic(n) for n in range(2, 65)]
    monotone = all(b > a for a, b in zip(values, values[1:]))
    approaches = abs(ana.c_analytic(10 ** 6) - ana.C_ANALYTIC_LIMIT) < 1e-5
    checks.append(("delta-method constant increases toward 1.375",
                   monotone and approaches,
                   f"c(2)={values[0]:.4f}, c(64)={values[-1]:.4f}"))

    ok = True
    detail = []
    for i, size in enumerate((2, 3)):
        n = 2 ** size
        sigma = 1.0 / np.sqrt(n)
        stream = RngStream(derive_sample_seed(90210, i))
        spec = gue.eigendecompose(gue.sample_gue(n, sigma, stream))
        state = dph.initial_state(dph.StateKind.HAAR_RANDOM, spec, stream)
        data = dph.dephasing_data(spec, dph.bulk_magnetisation(size), state)
        lhs = dph.gap_dispersion(data) ** 2
        rhs = float((data.gaps ** 4).sum())
        ok = ok and lhs <= rhs
        detail.append(f"N={n}: sigma_G^4={lhs:.3e} <= sum G^4={rhs:.3e}")
    checks.append(("Cauchy-Schwarz chain sigma_G^4 <= sum G^4", ok, "; ".join(detail)))

    return checks
