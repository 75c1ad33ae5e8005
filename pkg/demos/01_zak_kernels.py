"""
Zak kernels and stable sampling offsets
=======================================

Whether a spline space can be sampled at ``a + n`` is decided by the
modulus of its Zak kernel: it must stay away from zero.
"""

import numpy as np

from shiftsampling import Generator, riesz_condition, zak_kernel

###############################################################################
# Cubic B-spline, offset 0.  The kernel is a trigonometric polynomial
# with three terms; its smallest modulus sits at x = 1/2.
K = zak_kernel(Generator.bspline(4), 0.0, 256)
print(f"cubic, a=0:      min |K| = {K.lower:.6f} at x = {K.argmin}, max |K| = {K.upper:.6f}")

###############################################################################
# Quadratic B-spline.  At a = 0 the kernel vanishes at x = 1/2, so plain
# samples f(n) do not determine f stably.  Half a step later they do.
for a in (0.0, 0.25, 0.5):
    rc = riesz_condition(zak_kernel(Generator.bspline(3), a, 4096))
    state = "stable" if rc.valid else "degenerate"
    print(f"quadratic, a={a:<4}: {state:10s} min |K| = {rc.lower:.3e} (x = {rc.witness:.4f})")

###############################################################################
# Scanning the offset shows where every order is stable.
offsets = np.linspace(0, 0.95, 20)
for m in range(2, 7):
    lows = [zak_kernel(Generator.bspline(m), a, 512).lower for a in offsets]
    marks = "".join("#" if v > 1e-6 else "." for v in lows)
    print(f"N_{m}: {marks}   best a = {offsets[int(np.argmax(lows))]:.2f}")
