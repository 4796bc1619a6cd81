"""Sample one GUE Hamiltonian and look at its spectrum.

With the scaling sigma = 1/sqrt(N) the eigenvalues stay on a fixed support
(about [-2, 2]) no matter the dimension, which is what makes spectra of
different sizes comparable in the later demos.
"""

import numpy as np

from rmt_eq import RngStream, derive_sample_seed, eigendecompose, sample_gue
from rmt_eq.svg import render_svg_chart

N = 256
SIGMA = 1 / np.sqrt(N)

stream = RngStream(derive_sample_seed(0, 0))
h = sample_gue(N, SIGMA, stream)
spectrum = eigendecompose(h)

print(f"sampled {N}x{N} Hermitian matrix, sigma = {SIGMA:.4f}")
print(f"eigenvalue range: [{spectrum.energies[0]:.4f}, {spectrum.energies[-1]:.4f}]")
print(f"trace check: sum E_k = {spectrum.energies.sum():.6f}, Tr H = {np.trace(h).real:.6f}")

counts, edges = np.histogram(spectrum.energies, bins=32, range=(-2.5, 2.5), density=True)
bars = [((lo, hi), d) for lo, hi, d in zip(edges[:-1], edges[1:], counts)]
semicircle = [(x, np.sqrt(max(4 - x * x, 0.0)) / (2 * np.pi))
              for x in np.linspace(-2.5, 2.5, 200)]

render_svg_chart(
    [("eigenvalue density", bars)], "histogram", "out/demo01_spectrum.svg",
    title=f"One GUE spectrum, N={N}", x_label="E", y_label="density")
render_svg_chart(
    [("semicircle limit", semicircle)], "line", "out/demo01_semicircle.svg",
    title="Large-N limiting density", x_label="E", y_label="density")
print("wrote out/demo01_spectrum.svg and out/demo01_semicircle.svg")
