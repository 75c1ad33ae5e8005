"""
Two variables: Kronecker schemes
================================

Tensor schemes combine a 1-D scheme per axis.  The kernel may be the
product of two 1-D Shannon functions or come from a genuinely 2-D Zak
kernel.
"""

import numpy as np

from shiftsampling import (Generator, ProductGenerator, ShannonKernel2D, Signal2D,
                           apply_operators_2d, assemble_kernels_2d, forward_scheme,
                           invert_scheme, kronecker, reconstruct_2d, required_window_2d,
                           scheme_matrix, shannon_kernel, shannon_kernel_2d, zak_kernel,
                           zak_kernel_2d)

cubic = Generator.bspline(4)
P = ProductGenerator(cubic, cubic)
f = Signal2D.random(P, ((-10, 10), (-10, 10)), rng=2)
g = np.arange(-3, 3 + 1e-12, 1 / 8)

###############################################################################
# Period 2 in t with one forward difference, period 3 in s with two.
M = kronecker(scheme_matrix(forward_scheme(2), 2), scheme_matrix(forward_scheme(3), 3))
print("M1 (x) M2 =\n", M.matrix.astype(int))
print("inverse =\n", invert_scheme(M).matrix.astype(int))

s1 = shannon_kernel(zak_kernel(cubic, 0.0, 4096), 24)
ks = assemble_kernels_2d(ShannonKernel2D.separable(s1, s1), M, invert_scheme(M))
for label, combo in zip(M.labels, ks.combos):
    print(f"  {label:18s}", " ".join(f"{w:+g}@{s}" for s, w in combo))

win = required_window_2d(ks, (-3, 3), (-3, 3))
smp = apply_operators_2d(f, forward_scheme(2), forward_scheme(3), (0.0, 0.0), ks.p, win)
print("separable 2x3: max error", f"{np.abs(reconstruct_2d(smp, ks, g, g) - f(g, g)).max():.2e}")

###############################################################################
# Same idea with a 3x3 scheme and the kernel computed from the 2-D Zak
# transform of the product generator by a 2-D FFT.
M3 = kronecker(scheme_matrix(forward_scheme(3), 3), scheme_matrix(forward_scheme(3), 3))
S = shannon_kernel_2d(zak_kernel_2d(P, 0.0, 0.0, 128), 24)
ks3 = assemble_kernels_2d(S, M3, invert_scheme(M3))
win = required_window_2d(ks3, (-3, 3), (-3, 3))
smp = apply_operators_2d(f, forward_scheme(3), forward_scheme(3), (0.0, 0.0), ks3.p, win)
print("general 3x3:   max error", f"{np.abs(reconstruct_2d(smp, ks3, g, g) - f(g, g)).max():.2e}")
