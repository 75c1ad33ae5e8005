"""
Reconstruction from samples and differences
===========================================

Any invertible mix of samples, differences and averages over one
period gives composite kernels ``T_j``; the reconstruction is exact.
"""

import numpy as np

from shiftsampling import (Generator, Signal, apply_operators, build_kernel_set, reconstruct_1d,
                           required_window)

gen = Generator.bspline(4)
f = Signal.random(gen, (-20, 20), rng=1)
t = np.arange(-6, 6 + 1e-12, 1 / 16)

schemes = {
    "samples only": (["id@0"], 1),
    "f and 1st, 2nd forward diff": (["id@0", "fwd@0", "fwd^2@0"], 3),
    "backward differences": (["id@0", "bwd@0", "bwd^2@0", "bwd^3@0"], 4),
    "backward + forward": (["bwd@0", "id@0", "fwd@0"], 3),
    "average + difference": (["avg+@0", "fwd@0"], 2),
    "central average/difference": (["id@0", "avg0@0", "cdiff@0"], 3),
}

###############################################################################
# Each scheme: its matrix, its kernel weights, and the reconstruction error.
for name, (specs, p) in schemes.items():
    ks, M, dual = build_kernel_set(gen, 0.0, specs, p)
    smp = apply_operators(f, specs, 0.0, p, required_window(ks, t.min(), t.max()))
    err = np.abs(reconstruct_1d(smp, ks, t) - f(t)).max()
    print(f"\n{name}  (p = {p}, window starts at {M.window_start})")
    print("  M    =", M.matrix.tolist())
    print("  M^-1 =", dual.matrix.tolist())
    for label, combo in zip(ks.labels, ks.combos):
        terms = " ".join(f"{w:+g} S(t-{s})" if s >= 0 else f"{w:+g} S(t+{-s})"
                         for s, w in combo)
        print(f"  T[{label:8s}] = {terms}")
    print(f"  max error on [-6, 6]: {err:.2e}")
