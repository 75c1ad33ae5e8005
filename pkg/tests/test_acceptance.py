"""
Acceptance gate: one check per criterion, each at its stated tolerance.

Every check prints a ``PASS`` or ``FAIL`` line (also repeated in the
pytest terminal summary).  Run directly with ``python tests/test_acceptance.py``
for the bare list.
"""

import time
from fractions import Fraction
from math import comb, sqrt

import numpy as np
import pytest

from shiftsampling import (Generator, ProductGenerator, SchemeMatrix, ShannonKernel2D,
                           Signal, Signal2D, apply_operators, apply_operators_2d,
                           assemble_kernels, assemble_kernels_2d, backward_scheme,
                           biorthogonality_check, forward_scheme, interpolation_check,
                           invert_scheme, kronecker, left_inverse, reconstruct_1d,
                           reconstruct_2d, required_window, required_window_2d,
                           riesz_condition, scheme_matrix, shannon_kernel, shannon_kernel_2d,
                           zak_kernel, zak_kernel_2d, zak_series)

RESULTS = []
CUBIC = Generator.bspline(4)
QUADRATIC = Generator.bspline(3)


def record(number, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title} ({detail})"
    RESULTS.append(line)
    print(line)
    return ok


def exact_rows(M):
    return [[Fraction(v) for v in row] for row in M]


# displayed tables, written out by hand
H = Fraction(1, 2)
TABLES = [
    ("one forward difference", ["id@0", "fwd@0"], 2,
     [[1, 0], [-1, 1]], [[1, 0], [1, 1]]),
    ("forward p=3", ["id@0", "fwd@0", "fwd^2@0"], 3,
     [[1, 0, 0], [-1, 1, 0], [1, -2, 1]], [[1, 0, 0], [1, 1, 0], [1, 2, 1]]),
    ("mixed p=3", ["bwd@0", "id@0", "fwd@0"], 3,
     [[-1, 1, 0], [0, 1, 0], [0, -1, 1]], [[-1, 1, 0], [0, 1, 0], [0, 1, 1]]),
    ("mixed p=4", ["bwd@0", "id@0", "fwd@0", "fwd^2@0"], 4,
     [[-1, 1, 0, 0], [0, 1, 0, 0], [0, -1, 1, 0], [0, 1, -2, 1]],
     [[-1, 1, 0, 0], [0, 1, 0, 0], [0, 1, 1, 0], [0, 1, 2, 1]]),
    ("forward average", ["avg+@0", "fwd@0"], 2,
     [[H, H], [-1, 1]], [[1, -H], [1, H]]),
    ("central average", ["id@0", "avg0@0", "cdiff@0"], 3,
     [[0, 1, 0], [H, 0, H], [-1, 0, 1]], [[0, 1, -H], [1, 0, 0], [0, 1, H]]),
]

KRON_6 = [[1, 0, 0, 0, 0, 0], [-1, 1, 0, 0, 0, 0], [1, -2, 1, 0, 0, 0],
          [-1, 0, 0, 1, 0, 0], [1, -1, 0, -1, 1, 0], [-1, 2, -1, 1, -2, 1]]
I1 = [[1, 0, 0, 0, 0, 0], [1, 1, 0, 0, 0, 0], [1, 2, 1, 0, 0, 0],
      [1, 0, 0, 1, 0, 0], [1, 1, 0, 1, 1, 0], [1, 2, 1, 1, 2, 1]]
KRON_9 = [[1, 0, 0, 0, 0, 0, 0, 0, 0], [-1, 1, 0, 0, 0, 0, 0, 0, 0],
          [1, -2, 1, 0, 0, 0, 0, 0, 0], [-1, 0, 0, 1, 0, 0, 0, 0, 0],
          [1, -1, 0, -1, 1, 0, 0, 0, 0], [-1, 2, -1, 1, -2, 1, 0, 0, 0],
          [1, 0, 0, -2, 0, 0, 1, 0, 0], [-1, 1, 0, 2, -2, 0, -1, 1, 0],
          [1, -2, 1, -2, 4, -2, 1, -2, 1]]
I2 = [[1, 0, 0, 0, 0, 0, 0, 0, 0], [1, 1, 0, 0, 0, 0, 0, 0, 0],
      [1, 2, 1, 0, 0, 0, 0, 0, 0], [1, 0, 0, 1, 0, 0, 0, 0, 0],
      [1, 1, 0, 1, 1, 0, 0, 0, 0], [1, 2, 1, 1, 2, 1, 0, 0, 0],
      [1, 0, 0, 2, 0, 0, 1, 0, 0], [1, 1, 0, 2, 2, 0, 1, 1, 0],
      [1, 2, 1, 2, 4, 2, 1, 2, 1]]


def general_forward(p):
    # lower triangular alternating binomials and their unsigned inverse
    M = [[(-1) ** (r - c) * comb(r, c) if c <= r else 0 for c in range(p)] for r in range(p)]
    Minv = [[comb(r, c) if c <= r else 0 for c in range(p)] for r in range(p)]
    return M, Minv


def general_backward(p):
    # upper triangular, rows from the (p-1)-th difference down to the identity
    M = [[0] * p for _ in range(p)]
    for r in range(p):
        k = p - 1 - r
        for i in range(k + 1):
            M[r][p - 1 - i] = (-1) ** i * comb(k, i)
    return M


def criterion_1():
    t0 = time.perf_counter()
    bad, count = [], len(TABLES) + 14 + 2
    for name, specs, p, M, Minv in TABLES:
        S = scheme_matrix(specs, p)
        if [list(r) for r in S.exact] != exact_rows(M):
            bad.append(name + " matrix")
        if [list(r) for r in invert_scheme(S).exact] != exact_rows(Minv):
            bad.append(name + " inverse")
    for p in range(2, 9):
        M, Minv = general_forward(p)
        S = scheme_matrix(forward_scheme(p), p)
        if [list(r) for r in S.exact] != exact_rows(M) or \
                [list(r) for r in invert_scheme(S).exact] != exact_rows(Minv):
            bad.append(f"forward general p={p}")
        B = general_backward(p)
        S = scheme_matrix(list(reversed(backward_scheme(p))), p)
        if [list(r) for r in S.exact] != exact_rows(B) or \
                [list(r) for r in invert_scheme(S).exact] != exact_rows(B):
            bad.append(f"backward general p={p}")
    f2, f3 = scheme_matrix(forward_scheme(2), 2), scheme_matrix(forward_scheme(3), 3)
    for name, (A, B), M, Minv in (("2x3 product", (f2, f3), KRON_6, I1),
                                  ("3x3 product", (f3, f3), KRON_9, I2)):
        K = kronecker(A, B)
        if [list(r) for r in K.exact] != exact_rows(M):
            bad.append(name)
        if [list(r) for r in invert_scheme(K).exact] != exact_rows(Minv):
            bad.append(name + " inverse")
        kron_inv = [[x * y for x in ra for y in rb]
                    for ra in invert_scheme(A).exact for rb in invert_scheme(B).exact]
        if kron_inv != exact_rows(Minv):
            bad.append(name + " inverse of product")
    dt = time.perf_counter() - t0
    ok = not bad and dt < 1.0
    return record(1, "matrix tables exact", ok,
                  f"{count} tables, mismatches={bad or 'none'}, {dt:.3f}s")


def criterion_2():
    rows = []
    ok = True
    r_cub, r_quad = 2 - sqrt(3), 2 * sqrt(2) - 3
    cases = (("cubic a=0", CUBIC, 0.0, lambda n: sqrt(3) * (-1) ** n * r_cub ** abs(n + 2)),
             ("quadratic a=1/2", QUADRATIC, 0.5, lambda n: sqrt(2) * r_quad ** abs(n + 1)))
    for name, gen, a, closed in cases:
        t0 = time.perf_counter()
        base = shannon_kernel(zak_kernel(gen, a, 4096), 40)
        dt = time.perf_counter() - t0
        dev = max(abs(base.coefficient(n) - closed(n)) for n in range(-20, 21))
        ok &= dev <= 1e-9 and dt < 1.0
        rows.append(f"{name}: max|d|={dev:.1e} in {dt:.3f}s")
    return record(2, "closed-form kernel coefficients", ok, "; ".join(rows))


def criterion_3():
    quad = riesz_condition(zak_kernel(QUADRATIC, 0.0, 4096))
    cub = riesz_condition(zak_kernel(CUBIC, 0.0, 4096))
    ok = (not quad.valid and abs(quad.witness - 0.5) <= 1e-3
          and cub.valid and abs(cub.lower - 1 / 3) <= 1e-6)
    return record(3, "degeneracy diagnosis", ok,
                  f"quadratic a=0 degenerate at x={quad.witness:.4f}, "
                  f"cubic lower bound {cub.lower:.9f}")


def criterion_4():
    d1 = interpolation_check(shannon_kernel(zak_kernel(CUBIC, 0.0, 4096), 40), 10)
    d2 = interpolation_check(shannon_kernel(zak_kernel(QUADRATIC, 0.5, 4096), 40), 10)
    return record(4, "interpolation property", max(d1, d2) <= 1e-8,
                  f"cubic {d1:.1e}, quadratic {d2:.1e}")


SCHEMES_1D = [
    ("forward p=2", forward_scheme(2), 2), ("forward p=3", forward_scheme(3), 3),
    ("forward p=4", forward_scheme(4), 4), ("backward p=2", backward_scheme(2), 2),
    ("backward p=3", backward_scheme(3), 3), ("backward p=4", backward_scheme(4), 4),
    ("mixed p=3", ["bwd@0", "id@0", "fwd@0"], 3),
    ("mixed p=4", ["bwd@0", "id@0", "fwd@0", "fwd^2@0"], 4),
    ("average p=2", ["avg+@0", "fwd@0"], 2),
    ("central p=3", ["id@0", "avg0@0", "cdiff@0"], 3),
]


def criterion_5():
    t0 = time.perf_counter()
    t = np.arange(-8, 8 + 1e-12, 1 / 16)
    base = shannon_kernel(zak_kernel(CUBIC, 0.0, 4096), 40)
    signals = [Signal.random(CUBIC, (-32, 31), seed) for seed in range(20)]
    worst, where = 0.0, ""
    for name, specs, p in SCHEMES_1D:
        M = scheme_matrix(specs, p)
        ks = assemble_kernels(base, M, invert_scheme(M))
        win = required_window(ks, t.min(), t.max())
        for f in signals:
            err = np.abs(reconstruct_1d(apply_operators(f, specs, 0.0, p, win), ks, t)
                         - f(t)).max()
            if err > worst:
                worst, where = err, name
    dt = time.perf_counter() - t0
    return record(5, "exact 1-D reconstruction", worst <= 1e-8 and dt < 30,
                  f"{len(SCHEMES_1D)} schemes x 20 signals, max err {worst:.1e} ({where}), "
                  f"{dt:.2f}s")


def criterion_6():
    t0 = time.perf_counter()
    g = np.arange(-4, 4 + 1e-12, 1 / 8)
    P = ProductGenerator(CUBIC, CUBIC)
    s1 = shannon_kernel(zak_kernel(CUBIC, 0.0, 4096), 24)
    f2, f3 = scheme_matrix(forward_scheme(2), 2), scheme_matrix(forward_scheme(3), 3)
    general = shannon_kernel_2d(zak_kernel_2d(P, 0.0, 0.0, 128), 24)
    setups = [("separable 2x3", kronecker(f2, f3), ShannonKernel2D.separable(s1, s1),
               forward_scheme(2), forward_scheme(3)),
              ("general 3x3", kronecker(f3, f3), general, forward_scheme(3), forward_scheme(3))]
    signals = [Signal2D.random(P, ((-16, 15), (-16, 15)), seed) for seed in range(10)]
    errs = []
    for name, M, base, sx, sy in setups:
        ks = assemble_kernels_2d(base, M, invert_scheme(M))
        win = required_window_2d(ks, (-4, 4), (-4, 4))
        worst = 0.0
        for f in signals:
            smp = apply_operators_2d(f, sx, sy, (0.0, 0.0), ks.p, win)
            worst = max(worst, np.abs(reconstruct_2d(smp, ks, g, g) - f(g, g)).max())
        errs.append((name, worst))
    dt = time.perf_counter() - t0
    ok = max(e for _, e in errs) <= 1e-7 and dt < 60
    return record(6, "exact 2-D reconstruction", ok,
                  ", ".join(f"{n} {e:.1e}" for n, e in errs) + f", {dt:.2f}s")


def criterion_7():
    specs = ["id@0", "id@1", "fwd@0"]
    t = np.arange(-8, 8 + 1e-12, 1 / 16)
    M = scheme_matrix(specs, 2)
    base = shannon_kernel(zak_kernel(CUBIC, 0.0, 4096), 40)
    U = np.random.default_rng(7).uniform(-1, 1, (2, 3))
    outs, errs, agree = {}, [], 0.0
    for seed in range(5):
        f = Signal.random(CUBIC, (-32, 31), seed)
        for label, dual in (("pinv", left_inverse(M)), ("random U", left_inverse(M, U))):
            ks = assemble_kernels(base, M, dual)
            smp = apply_operators(f, specs, 0.0, 2, required_window(ks, t.min(), t.max()))
            outs[label] = reconstruct_1d(smp, ks, t)
            errs.append(np.abs(outs[label] - f(t)).max())
        agree = max(agree, np.abs(outs["pinv"] - outs["random U"]).max())
    ok = max(errs) <= 1e-8 and agree <= 1e-8
    return record(7, "frame path", ok, f"max err {max(errs):.1e}, disagreement {agree:.1e}")


def criterion_8():
    bad = []
    for p in range(1, 9):
        _, Minv = general_forward(p)
        if [list(r) for r in invert_scheme(scheme_matrix(forward_scheme(p), p)).exact] \
                != exact_rows(Minv):
            bad.append(f"pascal p={p}")
        B = scheme_matrix(list(reversed(backward_scheme(p))), p).exact
        sq = [[sum(B[r][k] * B[k][c] for k in range(p)) for c in range(p)] for r in range(p)]
        if sq != [[Fraction(int(r == c)) for c in range(p)] for r in range(p)]:
            bad.append(f"involution p={p}")

    K = zak_kernel(CUBIC, 0.0, 4096)
    bio = 0.0
    for _, specs, p in SCHEMES_1D:
        M = scheme_matrix(specs, p)
        bio = max(bio, biorthogonality_check(M, invert_scheme(M), K, W=3))

    # channels against inner products with modulated kernels
    x = K.x
    fourier = 0.0
    for seed in range(3):
        f = Signal.random(CUBIC, (-10, 10), seed)
        Fx = np.exp(-2j * np.pi * np.outer(x, f.indices)) @ f.coeffs
        for k in range(4):
            specs = ["id@0"] * 2 if k == 0 else [f"fwd^{k}@0", f"bwd^{k}@0"]
            smp = apply_operators(f, specs, 0.0, 4, (-2, 2))
            mults = ((np.exp(-2j * np.pi * x) - 1) ** k, (1 - np.exp(2j * np.pi * x)) ** k)
            for i, n in enumerate(range(-2, 3)):
                basis = np.exp(-2j * np.pi * 4 * n * x) * K.values
                for j in range(2):
                    ref = np.mean(Fx * np.conj(mults[j] * basis))
                    fourier = max(fourier, abs(smp.channels[j, i] - ref))

    t = np.linspace(-3, 3, 601)
    n = np.arange(-10, 11)
    pou = max(np.abs(Generator.bspline(m)(t[:, None] - n[None, :]).sum(axis=1) - 1).max()
              for m in range(1, 7))

    xs = np.arange(256) / 256
    shift = 0.0
    for m_ord in (2, 3, 4, 5):
        g = Generator.bspline(m_ord)
        for a in (0.0, 0.3, 0.5):
            Ka = zak_series(g, a, xs)
            for m in range(-3, 4):
                shift = max(shift, np.abs(zak_series(g, a + m, xs)
                                          - np.exp(-2j * np.pi * m * xs) * Ka).max())

    ok = not bad and bio <= 1e-6 and fourier <= 1e-6 and pou <= 1e-12 and shift <= 1e-12
    return record(8, "property suites", ok,
                  f"pascal/involution {'exact' if not bad else bad}, biorthogonality {bio:.1e}, "
                  f"operator/Fourier {fourier:.1e}, partition of unity {pou:.1e}, "
                  f"Zak shifting {shift:.1e}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8]


@pytest.mark.parametrize("check", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 9)])
def test_criterion(check):
    assert check()


if __name__ == "__main__":
    for check in CRITERIA:
        check()
