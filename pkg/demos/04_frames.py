"""
Redundant channels and left inverses
====================================

With more channels than the period, the scheme matrix is tall.  Every
left inverse yields a valid set of reconstruction kernels.
"""

import numpy as np

from shiftsampling import (Generator, Signal, apply_operators, assemble_kernels, left_inverse,
                           reconstruct_1d, required_window, scheme_matrix, shannon_kernel,
                           zak_kernel)

gen = Generator.bspline(4)
specs = ["id@0", "id@1", "fwd@0"]
M = scheme_matrix(specs, 2)
base = shannon_kernel(zak_kernel(gen, 0.0, 4096), 40)
print("M =", M.matrix.tolist(), " rank", np.linalg.matrix_rank(M.matrix))

f = Signal.random(gen, (-16, 16), rng=4)
t = np.arange(-5, 5 + 1e-12, 1 / 16)
rng = np.random.default_rng(0)

###############################################################################
# The pseudo-inverse and a few random left inverses.
results = {}
for label, U in [("pseudo-inverse", None)] + [(f"random U #{i}", rng.uniform(-1, 1, (2, 3)))
                                              for i in range(3)]:
    N = left_inverse(M, U)
    ks = assemble_kernels(base, M, N)
    smp = apply_operators(f, specs, 0.0, 2, required_window(ks, t.min(), t.max()))
    results[label] = reconstruct_1d(smp, ks, t)
    print(f"{label:15s} N = {np.round(N.matrix, 4).tolist()}  "
          f"max error {np.abs(results[label] - f(t)).max():.1e}")

###############################################################################
# They all agree on exact data; on noisy data the pseudo-inverse is the
# least-squares choice and usually the least sensitive.
noise = None
for label, U in [("pseudo-inverse", None), ("random U", rng.uniform(-3, 3, (2, 3)))]:
    ks = assemble_kernels(base, M, left_inverse(M, U))
    smp = apply_operators(f, specs, 0.0, 2, required_window(ks, t.min(), t.max()))
    if noise is None:
        noise = 1e-3 * rng.standard_normal(smp.channels.shape)
    noisy = type(smp)(smp.p, smp.a, smp.n_start, smp.channels + noise,
                      smp.labels)
    print(f"noisy, {label:15s}: max error {np.abs(reconstruct_1d(noisy, ks, t) - f(t)).max():.2e}")
