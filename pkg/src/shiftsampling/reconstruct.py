"""
Reconstruction engines.

Given channel samples ``c_j[n]`` and composite kernels ``T_j``,

    f(t) = sum_n sum_j c_j[n] T_j(t - pn)

and in two variables

    f(t, s) = sum_{n,m} sum_J c_J[n, m] T^J(t - p1 n, s - p2 m).

Both sums are evaluated by first folding the channels back into the
plain sample sequence (the weights of ``T_j`` are the columns of the
dual matrix) and then convolving with the coefficients of ``S``, so the
result is again a finite expansion in shifts of the generator.
"""

import time
from dataclasses import dataclass, field
from math import ceil, floor

import numpy as np
from scipy.signal import fftconvolve

from .errors import CoverageError, NotAFrameError
from .generators import gram_sequence, gram_symbol

__all__ = [
    "Signal",
    "Signal2D",
    "ReconstructionReport",
    "required_window",
    "required_window_2d",
    "reconstruct_1d",
    "frame_reconstruct_1d",
    "reconstruct_2d",
    "recovered_samples",
    "signal_norm",
    "stability_bounds",
    "report",
]


@dataclass(frozen=True, eq=False)
class Signal:
    """
    ``f(t) = sum_k coeffs[k - start] phi(t - k)``, finitely supported.
    """

    coeffs: np.ndarray = field(repr=False)
    start: int
    generator: object

    @classmethod
    def random(cls, generator, support, rng=None):
        """I.i.d. uniform ``[-1, 1]`` coefficients on ``support = (lo, hi)`` inclusive."""
        rng = np.random.default_rng(rng)
        lo, hi = support
        c = rng.uniform(-1.0, 1.0, int(hi) - int(lo) + 1)
        c.flags.writeable = False
        return cls(c, int(lo), generator)

    @property
    def indices(self):
        return self.start + np.arange(self.coeffs.size)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = self.generator(np.subtract.outer(t, self.indices)) @ self.coeffs
        return out if out.ndim else out[()]


@dataclass(frozen=True, eq=False)
class Signal2D:
    """
    ``f(t, s) = sum coeffs[n, m] Phi(t - n, s - m)``.

    Calling evaluates on the mesh ``ts x ss``.
    """

    coeffs: np.ndarray = field(repr=False)
    start: tuple
    generator: object

    @classmethod
    def random(cls, generator, support, rng=None):
        """``support = ((n0, n1), (m0, m1))`` inclusive."""
        rng = np.random.default_rng(rng)
        (n0, n1), (m0, m1) = support
        c = rng.uniform(-1.0, 1.0, (n1 - n0 + 1, m1 - m0 + 1))
        c.flags.writeable = False
        return cls(c, (int(n0), int(m0)), generator)

    def __call__(self, ts, ss):
        return self.generator.mesh(self.coeffs, self.start, ts, ss)


@dataclass(frozen=True)
class ReconstructionReport:
    """Error of a reconstruction against the true signal on a grid."""

    max_abs_error: float
    l2_error: float
    sample_counts: tuple
    radius: int
    runtime: float = 0.0

    def to_dict(self):
        return {"maxAbsError": self.max_abs_error, "l2Error": self.l2_error,
                "sampleCounts": list(self.sample_counts), "radius": self.radius,
                "runtime": self.runtime}


def _axis_window(lo_S, hi_S, smin, smax, p, tmin, tmax):
    # T(u) can be nonzero only for smin + lo_S < u < smax + hi_S
    return floor((tmin - smax - hi_S) / p), ceil((tmax - smin - lo_S) / p)


def required_window(ks, t_min, t_max):
    """
    Inclusive block range ``(n_lo, n_hi)`` whose samples reach ``[t_min, t_max]``.

    Outside it every truncated ``T_j(t - pn)`` vanishes on the interval.
    """
    lo_S, hi_S = ks.base.support
    smin, smax = ks.shift_range()
    return _axis_window(lo_S, hi_S, smin, smax, ks.p, t_min, t_max)


def required_window_2d(ks, t_range, s_range):
    """Per-axis :func:`required_window` for a 2-D kernel set."""
    out = []
    for (lo_S, hi_S), (smin, smax), p, (u0, u1) in zip(
            ks.base.support, ks.shift_range(), ks.p, (t_range, s_range)):
        out.append(_axis_window(lo_S, hi_S, smin, smax, p, u0, u1))
    return tuple(out)


def _check_cover(have, need, axis=""):
    if have.start > need[0] or have.stop - 1 < need[1]:
        raise CoverageError(
            f"sample window{axis} {have.start}..{have.stop - 1} does not cover the "
            f"evaluation grid; required window is {need[0]}..{need[1]}", need)


def recovered_samples(samples, ks):
    """
    Fold channels back into the sample sequence.

    Returns ``(m0, v)`` with ``v[i]`` the coefficient of ``S_a(t - m0 - i)``,
    i.e. ``sum`` of ``weight * c_j[n]`` over ``pn + shift = m0 + i``.
    """
    p = ks.p
    n = np.asarray(samples.window)
    smin, smax = ks.shift_range()
    m0 = p * n[0] + smin
    dtype = np.result_type(samples.channels, ks.base.coeffs,
                           *[w for c in ks.combos for _, w in c])
    v = np.zeros(p * (n.size - 1) + smax - smin + 1, dtype=dtype)
    for j, combo in enumerate(ks.combos):
        for s, w in combo:
            v[p * (n - n[0]) + s - smin] += w * samples.channels[j]
    return m0, v


def _check_layout(samples, ks):
    if samples.p != ks.p:
        raise ValueError(f"samples have period {samples.p}, kernels {ks.p}")
    if samples.channels.shape[0] != len(ks.combos):
        raise ValueError(f"{samples.channels.shape[0]} sample channels, "
                         f"{len(ks.combos)} kernels")
    if abs(samples.a - ks.a) > 1e-15:
        raise ValueError(f"samples taken at a = {samples.a}, kernels built for a = {ks.a}")


def reconstruct_1d(samples, ks, t):
    """
    Evaluate ``sum_n sum_j c_j[n] T_j(t - pn)``.

    Parameters
    ----------
    samples : SampleSet
    ks : SamplingKernelSet
    t : array_like
        Evaluation points.

    Raises
    ------
    CoverageError
        If the sample window misses blocks that reach the grid; the
        required window is attached.
    """
    _check_layout(samples, ks)
    t = np.asarray(t, dtype=float)
    _check_cover(samples.window, required_window(ks, t.min(), t.max()))
    m0, v = recovered_samples(samples, ks)
    d = np.convolve(v, ks.base.coeffs)
    out = Signal(d, m0 + ks.base.start, ks.base.generator)(t)
    return out.real if np.isrealobj(samples.channels) and np.iscomplexobj(out) else out


def frame_reconstruct_1d(samples, ks, t):
    """
    Reconstruction from a redundant scheme through a left-inverse kernel set.

    With ``q == p`` this is :func:`reconstruct_1d`.
    """
    q = samples.channels.shape[0]
    if q > ks.p and ks.mode != "frame":
        raise NotAFrameError("redundant samples need kernels built from a left inverse")
    return reconstruct_1d(samples, ks, t)


def reconstruct_2d(samples, ks, ts, ss):
    """
    Evaluate the 2-D formula on the mesh ``ts x ss``.

    ``ks`` comes from :func:`~shiftsampling.kernels.assemble_kernels_2d`
    with either a separable ``S_a (x) S~_b`` or a general ``S_{a,b}``.
    """
    if tuple(samples.p) != tuple(ks.p):
        raise ValueError(f"samples have periods {samples.p}, kernels {ks.p}")
    if samples.channels.shape[0] != len(ks.combos):
        raise ValueError("channel count does not match kernel count")
    ts = np.asarray(ts, dtype=float)
    ss = np.asarray(ss, dtype=float)
    need = required_window_2d(ks, (ts.min(), ts.max()), (ss.min(), ss.max()))
    for ax, (have, nd) in enumerate(zip(samples.window, need)):
        _check_cover(have, nd, f" (axis {ax})")
    (s1min, s1max), (s2min, s2max) = ks.shift_range()
    p1, p2 = ks.p
    N1, N2 = samples.channels.shape[1:]
    v = np.zeros((p1 * (N1 - 1) + s1max - s1min + 1, p2 * (N2 - 1) + s2max - s2min + 1),
                 dtype=np.result_type(samples.channels, ks.base.coeffs))
    for J, combo in enumerate(ks.combos):
        for (s1, s2), w in combo:
            v[s1 - s1min:s1 - s1min + p1 * (N1 - 1) + 1:p1,
              s2 - s2min:s2 - s2min + p2 * (N2 - 1) + 1:p2] += w * samples.channels[J]
    m0 = (p1 * samples.n_start[0] + s1min, p2 * samples.n_start[1] + s2min)
    d = fftconvolve(v, ks.base.coeffs)
    start = (m0[0] + ks.base.start[0], m0[1] + ks.base.start[1])
    out = ks.base.generator.mesh(d, start, ts, ss)
    return out.real if np.isrealobj(samples.channels) and np.iscomplexobj(out) else out


def report(f, fhat, grid, samples, ks, runtime=0.0):
    """Max and L2 (rectangle rule) errors of ``fhat`` against ``f(grid)``."""
    grid = np.asarray(grid, dtype=float)
    err = np.abs(np.asarray(fhat) - f(grid))
    h = float(np.diff(grid).mean()) if grid.size > 1 else 1.0
    return ReconstructionReport(float(err.max()), float(np.sqrt(np.sum(err ** 2) * h)),
                                tuple(samples.counts), ks.radius, runtime)


def signal_norm(f):
    """
    ``||f||_{L^2}`` from the coefficients and the Gram sequence of ``phi``.

    Uses ``<N_m, N_m(. - k)> = N_{2m}(m + k)``; B-spline generators only.
    """
    k, g = gram_sequence(f.generator)
    a = np.asarray(f.coeffs)
    auto = np.correlate(a, a, mode="full")
    mid = a.size - 1
    total = 0.0
    for kk, gk in zip(k, g):
        i = mid + kk
        if 0 <= i < auto.size:
            total += gk * auto[i].real
    return float(np.sqrt(total))


def stability_bounds(M, kernel):
    """
    Frame/Riesz bounds ``(A, B)`` with
    ``A ||f||^2 <= sum_{n,j} |c_j[n]|^2 <= B ||f||^2``.

    ``A = s_min(M)^2 min |K_a|^2 / G_phi`` and ``B = s_max(M)^2 max |K_a|^2 / G_phi``
    where ``G_phi`` is the Gram symbol; extrema are grid estimates.
    """
    sv = np.linalg.svd(np.asarray(M.matrix), compute_uv=False)
    ratio = np.abs(kernel.values) ** 2 / gram_symbol(kernel.generator, kernel.grid_size)
    return float(sv.min() ** 2 * ratio.min()), float(sv.max() ** 2 * ratio.max())


def timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t0
