"""Watch one system equilibrate: the time signal g(t) and its square.

Starting from the all-spins-up state (far from equilibrium for the bulk
magnetisation), the squared signal decays from |g(0)|^2 toward its
infinite-time average g2_inf = sum |nu_ij|^2.  The first-crossing time of
that threshold is the proxy used for the equilibration time, and the
heuristic pi / (2 sigma_G) lands in the same region.
"""

import numpy as np

from rmt_eq import (RngStream, StateKind, TimeGridSpec, bulk_magnetisation,
                    dephasing_data, derive_sample_seed, eigendecompose, first_crossing,
                    gap_dispersion, initial_state, sample_gue, teq_estimate, time_signal)
from rmt_eq.svg import render_svg_chart

L = 5
N = 2 ** L
SIGMA = 1 / np.sqrt(N)

stream = RngStream(derive_sample_seed(11, 0))
spectrum = eigendecompose(sample_gue(N, SIGMA, stream))
state = initial_state(StateKind.BASIS_ALL_UP, spectrum)
data = dephasing_data(spectrum, bulk_magnetisation(L), state)

sigma_g_sq = gap_dispersion(data)
t_heuristic = teq_estimate(sigma_g_sq)
times = TimeGridSpec(horizon_teqs=10.0).times(N, SIGMA)
trace = time_signal(data, times)
t_fc = first_crossing(data, times, trace.sq_values)

print(f"L={L} qubits, N={N}, sigma={SIGMA:.4f}")
print(f"|g(0)|^2 = {trace.sq_values[0]:.4f}, threshold g2_inf = {data.g2_inf:.6f}")
print(f"effective dimension d_eff = {data.d_eff:.2f} (bound 1/d_eff = {1 / data.d_eff:.6f})")
print(f"gap dispersion sigma_G^2 = {sigma_g_sq:.4f}")
print(f"heuristic time pi/(2 sigma_G) = {t_heuristic:.4f}")
print(f"measured first crossing     = {t_fc:.4f}")

threshold = [(float(times[0]), data.g2_inf), (float(times[-1]), data.g2_inf)]
render_svg_chart(
    [("|g(t)|^2", list(zip(trace.times, trace.sq_values))),
     ("infinite-time average", threshold)],
    "line", "out/demo03_trace.svg",
    title=f"Dephasing of the bulk magnetisation, L={L}",
    x_label="t", y_label="|g(t)|^2")
print("wrote out/demo03_trace.svg")
