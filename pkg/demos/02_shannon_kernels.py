"""
Shannon-type sampling functions for splines
===========================================

``S_a`` is itself a spline whose coefficients decay geometrically.  We
compute them by FFT and compare with the known closed forms.
"""

from math import sqrt

import numpy as np

from shiftsampling import (Generator, decay_rate, interpolation_check, shannon_kernel,
                           zak_kernel)

cubic = shannon_kernel(zak_kernel(Generator.bspline(4), 0.0, 4096), 40)
quad = shannon_kernel(zak_kernel(Generator.bspline(3), 0.5, 4096), 40)

###############################################################################
# Coefficients next to the closed forms.
print(" n    cubic c_n         closed form        quadratic c_n     closed form")
for n in range(-5, 4):
    cc = sqrt(3) * (-1) ** n * (2 - sqrt(3)) ** abs(n + 2)
    qc = sqrt(2) * (2 * sqrt(2) - 3) ** abs(n + 1)
    print(f"{n:3d}  {cubic.coefficient(n):+.12f}  {cc:+.12f}  "
          f"{quad.coefficient(n):+.12f}  {qc:+.12f}")

###############################################################################
# The decay ratio of the cubic coefficients is 2 - sqrt(3).
print(f"\nfitted decay {decay_rate(cubic):.7f}   2 - sqrt(3) = {2 - sqrt(3):.7f}")

###############################################################################
# Both functions interpolate: S_a(a + n) is 1 at n = 0 and 0 elsewhere.
print(f"interpolation deviation: cubic {interpolation_check(cubic):.1e}, "
      f"quadratic {interpolation_check(quad):.1e}")

###############################################################################
# A short truncation radius visibly spoils the interpolation property.
base = zak_kernel(Generator.bspline(4), 0.0, 4096)
for R in (3, 5, 8, 12, 20):
    print(f"R = {R:2d}: deviation {interpolation_check(shannon_kernel(base, R)):.2e}")

t = np.linspace(-4, 4, 9)
print("\nS_0 on the integers:", np.round(cubic(t), 12) + 0.0)
