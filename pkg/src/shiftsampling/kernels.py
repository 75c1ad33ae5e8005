"""
Shannon-type sampling functions and composite reconstruction kernels.

``S_a`` is the image of ``1 / conj(K_a)`` under the isomorphism
``L^2(0, 1) -> V_phi`` that sends ``exp(-2 pi i n x)`` to ``phi(t - n)``,
so its expansion coefficients in shifts of ``phi`` are the Fourier
coefficients of ``1 / conj(K_a)``.  A scheme with dual matrix ``B``
pairs channel ``j`` with ``T_j(t) = sum_k B[k, j] S_a(t - w - k)``.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateKernelError, InsufficientGridError
from .generators import Generator, ProductGenerator, riesz_condition

__all__ = [
    "ShannonKernel",
    "ShannonKernel2D",
    "SamplingKernelSet",
    "SamplingKernelSet2D",
    "shannon_kernel",
    "shannon_kernel_2d",
    "assemble_kernels",
    "assemble_kernels_2d",
    "interpolation_check",
    "decay_rate",
    "build_kernel_set",
    "SCHEMA_VERSION",
]

DEFAULT_RADIUS = 40
SCHEMA_VERSION = 1


def _frozen(a):
    a = np.array(a)
    a.flags.writeable = False
    return a


def _realify(c):
    if np.iscomplexobj(c) and np.abs(c.imag).max() <= 1e-12 * max(np.abs(c).max(), 1e-300):
        return c.real.copy()
    return c


def _require_valid(kernel):
    check = riesz_condition(kernel)
    if not check.valid:
        raise DegenerateKernelError(
            f"Riesz condition fails: min |K| = {check.lower:.3e} at x = {check.witness}",
            check.witness, check.lower)


@dataclass(frozen=True, eq=False)
class ShannonKernel:
    """
    ``S_a(t) = sum_n coeffs[n - start] phi(t - n)``, truncated.

    Attributes
    ----------
    generator : Generator
    a : float
    coeffs : numpy.ndarray
        Coefficients for ``n = start, ..., start + len - 1``.
    start : int
        First index, ``-R``.
    grid_size : int
        Grid the coefficients were computed on.
    tail_mass : float
        ``sum |c_n|^2`` over ``R < |n| < G/2``: the discarded part.
    """

    generator: Generator
    a: float
    coeffs: np.ndarray = field(repr=False)
    start: int
    grid_size: int = 0
    tail_mass: float = 0.0

    @property
    def radius(self):
        return (self.coeffs.size - 1) // 2

    @property
    def indices(self):
        return self.start + np.arange(self.coeffs.size)

    @property
    def support(self):
        lo, hi = self.generator.support
        return self.start + lo, self.start + self.coeffs.size - 1 + hi

    def coefficient(self, n):
        i = n - self.start
        return self.coeffs[i] if 0 <= i < self.coeffs.size else 0.0

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = self.generator(np.subtract.outer(t, self.indices)) @ self.coeffs
        return out if out.ndim else out[()]

    def to_dict(self):
        d = {"generator": self.generator.to_dict(), "a": self.a, "start": self.start,
             "gridSize": self.grid_size, "tailMass": self.tail_mass,
             "coeffs": np.real(self.coeffs).tolist()}
        if np.iscomplexobj(self.coeffs):
            d["coeffsImag"] = self.coeffs.imag.tolist()
        return d

    @classmethod
    def from_dict(cls, d):
        c = np.array(d["coeffs"], dtype=float)
        if "coeffsImag" in d:
            c = c + 1j * np.array(d["coeffsImag"], dtype=float)
        return cls(Generator.from_dict(d["generator"]), float(d["a"]), _frozen(c),
                   int(d["start"]), int(d.get("gridSize", 0)), float(d.get("tailMass", 0.0)))


def shannon_kernel(kernel, R=DEFAULT_RADIUS):
    """
    Expansion coefficients of ``S_a`` from a Zak kernel.

    ``c_n = int_0^1 exp(2 pi i n x) / conj(K_a(x)) dx`` evaluated by an
    inverse FFT over the kernel grid and kept for ``|n| <= R``.

    Raises
    ------
    DegenerateKernelError
        If the kernel fails the Riesz condition.
    InsufficientGridError
        If ``G < 4 R``.
    """
    _require_valid(kernel)
    G = kernel.grid_size
    if G < 4 * R:
        raise InsufficientGridError(f"grid size {G} too small for radius {R}: need G >= {4 * R}")
    full = np.fft.ifft(1.0 / np.conj(kernel.values))
    n = np.arange(-R, R + 1)
    c = _realify(full[n % G])
    tail = np.arange(R + 1, (G + 1) // 2)
    tail_mass = float(np.sum(np.abs(full[tail]) ** 2) + np.sum(np.abs(full[-tail]) ** 2))
    return ShannonKernel(kernel.generator, kernel.a, _frozen(c), -R, G, tail_mass)


def interpolation_check(ks, n_range=10):
    """
    ``max_{|n| <= n_range} |S_a(a + n) - delta_{n0}|``.

    ``ks`` is a :class:`ShannonKernel` or a kernel set carrying one.
    """
    base = getattr(ks, "base", ks)
    n = np.arange(-n_range, n_range + 1)
    vals = base(base.a + n)
    return float(np.abs(vals - (n == 0)).max())


def decay_rate(base, span=12):
    """
    Fitted ratio ``rho`` in ``|c_n| ~ C rho^{|n - n_peak|}``.

    Least squares on ``log |c_n|`` over ``1 <= |n - n_peak| <= span``.
    """
    c = np.abs(base.coeffs)
    peak = int(np.argmax(c))
    d = np.arange(-span, span + 1)
    d = d[(d != 0) & (peak + d >= 0) & (peak + d < c.size)]
    slope = np.polyfit(np.abs(d), np.log(c[peak + d]), 1)[0]
    return float(np.exp(slope))


@dataclass(frozen=True, eq=False)
class SamplingKernelSet:
    """
    ``S_a`` plus one composite kernel per channel.

    ``combos[j]`` is a tuple of ``(shift, weight)`` with
    ``T_j(t) = sum weight * S_a(t - shift)``.
    """

    base: ShannonKernel
    combos: tuple
    p: int
    window_start: int
    labels: tuple = ()
    mode: str = "basis"

    @property
    def a(self):
        return self.base.a

    @property
    def radius(self):
        return self.base.radius

    def T(self, j, t):
        """Evaluate ``T_j`` at ``t``."""
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=self.base.coeffs.dtype)
        for s, w in self.combos[j]:
            out = out + w * self.base(t - s)
        return out

    def shift_range(self):
        shifts = [s for combo in self.combos for s, _ in combo]
        return min(shifts), max(shifts)

    def to_dict(self):
        return {
            "schemaVersion": SCHEMA_VERSION,
            "base": self.base.to_dict(),
            "period": self.p,
            "windowStart": self.window_start,
            "labels": list(self.labels),
            "mode": self.mode,
            "combos": [[[int(s), _jsonable(w)] for s, w in combo] for combo in self.combos],
        }

    @classmethod
    def from_dict(cls, d):
        if d.get("schemaVersion") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schemaVersion {d.get('schemaVersion')!r}")
        combos = tuple(tuple((int(s), _from_jsonable(w)) for s, w in combo)
                       for combo in d["combos"])
        return cls(ShannonKernel.from_dict(d["base"]), combos, int(d["period"]),
                   int(d["windowStart"]), tuple(d.get("labels", ())), d.get("mode", "basis"))


def _jsonable(w):
    w = complex(w)
    return w.real if w.imag == 0 else [w.real, w.imag]


def _from_jsonable(w):
    return complex(*w) if isinstance(w, list) else float(w)


def _weights(dual, j):
    col = np.asarray(dual.matrix)[:, j]
    if dual.exact is not None:
        nz = [k for k in range(col.size) if dual.exact[k][j] != 0]
    else:
        nz = [k for k in range(col.size) if col[k] != 0]
    return [(k, col[k].item()) for k in nz]


def assemble_kernels(base, M, dual):
    """
    Composite kernels ``T_j`` from the columns of ``M^{-1}`` or of a left inverse.

    ``combos[j] = ((w + k, dual[k, j]) for dual[k, j] != 0)`` where
    ``w`` is the window start of ``M``.
    """
    q, p = M.shape
    if np.asarray(dual.matrix).shape != (p, q):
        raise ValueError(f"dual matrix must be {p}x{q}")
    combos = tuple(tuple((M.window_start + k, w) for k, w in _weights(dual, j))
                   for j in range(q))
    return SamplingKernelSet(base, combos, p, M.window_start, M.labels, dual.mode)


@dataclass(frozen=True, eq=False)
class ShannonKernel2D:
    """``S(t, s) = sum coeffs[n, m] Phi(t - n, s - m)`` with ``n, m`` from ``start``."""

    generator: object
    a: float
    b: float
    coeffs: np.ndarray = field(repr=False)
    start: tuple
    grid_size: int = 0

    @classmethod
    def separable(cls, sx, sy):
        """``S_a(t) S~_b(s)`` from two 1-D kernels."""
        return cls(ProductGenerator(sx.generator, sy.generator), sx.a, sy.a,
                   _frozen(np.multiply.outer(sx.coeffs, sy.coeffs)), (sx.start, sy.start),
                   min(sx.grid_size, sy.grid_size))

    @property
    def radius(self):
        return max((n - 1) // 2 for n in self.coeffs.shape)

    @property
    def support(self):
        out = []
        for (lo, hi), st, n in zip(self.generator.support, self.start, self.coeffs.shape):
            out.append((st + lo, st + n - 1 + hi))
        return tuple(out)

    def __call__(self, ts, ss):
        return self.generator.mesh(self.coeffs, self.start, ts, ss)


def shannon_kernel_2d(kernel, R=24):
    """
    Coefficients of ``S_{a,b}`` from a 2-D Zak kernel by a 2-D inverse FFT.

    Raises as :func:`shannon_kernel`.
    """
    _require_valid(kernel)
    G = kernel.grid_size
    if G < 4 * R:
        raise InsufficientGridError(f"grid size {G} too small for radius {R}: need G >= {4 * R}")
    full = np.fft.ifft2(1.0 / np.conj(kernel.values))
    n = np.arange(-R, R + 1) % G
    c = _realify(full[np.ix_(n, n)])
    return ShannonKernel2D(kernel.generator, kernel.a, kernel.b, _frozen(c), (-R, -R), G)


@dataclass(frozen=True, eq=False)
class SamplingKernelSet2D:
    """
    ``S`` plus one composite kernel per 2-D channel.

    ``combos[J]`` holds ``((s1, s2), weight)`` with
    ``T^J(t, s) = sum weight * S(t - s1, s - s2)``.
    """

    base: ShannonKernel2D
    combos: tuple
    p: tuple
    labels: tuple = ()

    def T(self, J, ts, ss):
        ts = np.asarray(ts, dtype=float)
        ss = np.asarray(ss, dtype=float)
        out = 0
        for (s1, s2), w in self.combos[J]:
            out = out + w * self.base(ts - s1, ss - s2)
        return out

    def shift_range(self):
        shifts = np.array([s for combo in self.combos for s, _ in combo])
        return tuple(zip(shifts.min(axis=0), shifts.max(axis=0)))


def assemble_kernels_2d(base, M, dual):
    """
    Composite 2-D kernels from a Kronecker scheme ``M = M1 (x) M2``.

    Column ``K = k1 p2 + k2`` of the dual corresponds to the lattice
    shift ``(w1 + k1, w2 + k2)``.
    """
    if M.factors is None:
        raise ValueError("assemble_kernels_2d needs a Kronecker-product scheme")
    pos = M.positions()
    q = M.channels
    combos = tuple(tuple((pos[k], w) for k, w in _weights(dual, J)) for J in range(q))
    periods = tuple(f.period for f in M.factors)
    return SamplingKernelSet2D(base, combos, periods, M.labels)


def build_kernel_set(gen, a, specs, p, G=4096, R=DEFAULT_RADIUS, U=None, window_start=None):
    """
    Zak kernel, ``S_a``, scheme matrix, dual and composite kernels in one call.

    Square schemes are inverted; redundant ones use :func:`left_inverse`
    with the optional ``U``.

    Returns
    -------
    (SamplingKernelSet, SchemeMatrix, DualMatrix)
    """
    from .generators import zak_kernel
    from .riesz import invert_scheme, left_inverse
    from .schemes import scheme_matrix

    M = scheme_matrix(specs, p, window_start)
    dual = left_inverse(M, U) if M.is_frame else invert_scheme(M)
    base = shannon_kernel(zak_kernel(gen, a, G), R)
    return assemble_kernels(base, M, dual), M, dual
