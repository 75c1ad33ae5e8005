"""
Generators of shift-invariant spaces and their Zak kernels.

A generator ``phi`` spans ``V_phi = {sum_n a_n phi(t - n)}``.  Every
``f`` in that space is an inner product in ``L^2(0, 1)`` against the
kernel

    K_t(x) = sum_n conj(phi(t - n)) exp(-2 pi i n x),

which is the complex conjugate of the Zak transform of ``phi``.  The
essential bounds of ``|K_a|`` decide whether the samples ``f(a + n)``
are stable.
"""

from dataclasses import dataclass, field
from math import ceil, floor

import numpy as np

from .errors import InvalidOrderError

__all__ = [
    "Generator",
    "ProductGenerator",
    "FunctionGenerator2D",
    "ZakKernel",
    "ZakKernel2D",
    "RieszCheck",
    "bspline_eval",
    "zak_series",
    "zak_kernel",
    "zak_kernel_2d",
    "riesz_condition",
    "gram_sequence",
    "gram_symbol",
]

DEFAULT_SINC_RADIUS = 64
DEFAULT_RIESZ_TOL = 1e-6


def _frozen(a, dtype=None):
    a = np.array(a, dtype=dtype)
    a.flags.writeable = False
    return a


def bspline_eval(m, t):
    """
    Evaluate the cardinal B-spline ``N_m`` supported on ``[0, m]``.

    ``N_1`` is the indicator of ``[0, 1)`` and ``N_m = N_1 * N_{m-1}``.
    The recursion used is

        N_k(t) = (t N_{k-1}(t) + (k - t) N_{k-1}(t - 1)) / (k - 1).

    Parameters
    ----------
    m : int
        Order (``m - 1`` is the polynomial degree), ``m >= 1``.
    t : float or array_like
        Evaluation points.

    Returns
    -------
    float or numpy.ndarray
        ``N_m(t)``, same shape as ``t``.
    """
    if int(m) != m or m < 1:
        raise InvalidOrderError(f"B-spline order must be an integer >= 1, got {m!r}")
    m = int(m)
    scalar = np.ndim(t) == 0
    t = np.asarray(t, dtype=float)
    x = t[..., None] - np.arange(m)
    N = ((x >= 0.0) & (x < 1.0)).astype(float)
    for k in range(2, m + 1):
        n = m - k + 1
        N = (x[..., :n] * N[..., :n] + (k - x[..., :n]) * N[..., 1:n + 1]) / (k - 1)
    out = N[..., 0]
    return float(out) if scalar else out


@dataclass(frozen=True, eq=False)
class Generator:
    """
    A generator ``phi`` of ``V_phi``.

    Use the constructors :meth:`bspline`, :meth:`sinc` and
    :meth:`tabulated` rather than the raw fields.

    Attributes
    ----------
    kind : {'bspline', 'sinc', 'tabulated'}
    order : int
        B-spline order ``m`` (support ``[0, m]``).
    radius : int
        Truncation radius for sinc: lattice sums keep ``|n| <= radius``.
        This is an approximation knob, not part of the function.
    values, start, step
        Tabulated samples ``phi(start + i*step)``; linear interpolation
        in between and zero outside.
    """

    kind: str
    order: int = 0
    radius: int = DEFAULT_SINC_RADIUS
    values: np.ndarray = field(default=None, repr=False)
    start: float = 0.0
    step: float = 1.0

    @classmethod
    def bspline(cls, m):
        if int(m) != m or m < 1:
            raise InvalidOrderError(f"B-spline order must be an integer >= 1, got {m!r}")
        return cls("bspline", order=int(m))

    @classmethod
    def sinc(cls, radius=DEFAULT_SINC_RADIUS):
        if radius < 1:
            raise ValueError("sinc truncation radius must be >= 1")
        return cls("sinc", radius=int(radius))

    @classmethod
    def tabulated(cls, values, start, step):
        values = _frozen(values, dtype=float)
        if values.ndim != 1 or values.size < 2:
            raise ValueError("tabulated generator needs a 1-D table of at least 2 values")
        if step <= 0:
            raise ValueError("tabulated grid step must be positive")
        return cls("tabulated", values=values, start=float(start), step=float(step))

    @property
    def support(self):
        """Closed interval outside of which ``phi`` is treated as zero."""
        if self.kind == "bspline":
            return 0.0, float(self.order)
        if self.kind == "sinc":
            return -float(self.radius), float(self.radius)
        return self.start, self.start + self.step * (self.values.size - 1)

    def __call__(self, t):
        if self.kind == "bspline":
            return bspline_eval(self.order, t)
        if self.kind == "sinc":
            out = np.sinc(np.asarray(t, dtype=float))
        else:
            grid = self.start + self.step * np.arange(self.values.size)
            out = np.interp(t, grid, self.values, left=0.0, right=0.0)
        return float(out) if np.ndim(t) == 0 else out

    def lattice(self, t):
        """Integers ``n`` with ``t - n`` inside the support."""
        lo, hi = self.support
        return np.arange(ceil(t - hi), floor(t - lo) + 1)

    def to_dict(self):
        if self.kind == "bspline":
            return {"kind": "bspline", "order": self.order}
        if self.kind == "sinc":
            return {"kind": "sinc", "radius": self.radius}
        return {"kind": "tabulated", "values": self.values.tolist(),
                "start": self.start, "step": self.step}

    @classmethod
    def from_dict(cls, d):
        if isinstance(d, str):
            kind, _, arg = d.partition(":")
            d = {"kind": kind}
            if arg:
                d["order" if kind == "bspline" else "radius"] = int(arg)
        kind = d.get("kind")
        if kind == "bspline":
            return cls.bspline(d["order"])
        if kind == "sinc":
            return cls.sinc(d.get("radius", DEFAULT_SINC_RADIUS))
        if kind == "tabulated":
            return cls.tabulated(d["values"], d["start"], d["step"])
        raise ValueError(f"unknown generator kind {kind!r}")

    def __str__(self):
        if self.kind == "bspline":
            return f"N_{self.order}"
        if self.kind == "sinc":
            return f"sinc(R={self.radius})"
        return f"tabulated[{self.values.size}]"


class ProductGenerator:
    """Separable 2-D generator ``Phi(t, s) = phi(t) psi(s)``."""

    separable = True

    def __init__(self, phi, psi):
        self.phi = phi
        self.psi = psi

    @property
    def support(self):
        return self.phi.support, self.psi.support

    def __call__(self, t, s):
        return self.phi(t) * self.psi(s)

    def mesh(self, coeffs, start, ts, ss):
        """Evaluate ``sum a_{nm} Phi(t - n, s - m)`` on the mesh ``ts x ss``."""
        coeffs = np.asarray(coeffs)
        n = start[0] + np.arange(coeffs.shape[0])
        m = start[1] + np.arange(coeffs.shape[1])
        Bx = self.phi(np.subtract.outer(np.asarray(ts, dtype=float), n))
        By = self.psi(np.subtract.outer(np.asarray(ss, dtype=float), m))
        return Bx @ coeffs @ By.T

    def to_dict(self):
        return {"kind": "product", "x": self.phi.to_dict(), "y": self.psi.to_dict()}

    def __str__(self):
        return f"{self.phi}(x){self.psi}"


class FunctionGenerator2D:
    """
    General 2-D generator given as a vectorized callable ``Phi(t, s)``.

    ``support`` is the box ``((t0, t1), (s0, s1))`` outside of which
    ``Phi`` vanishes.
    """

    separable = False

    def __init__(self, func, support):
        self.func = func
        self._support = tuple(tuple(float(v) for v in ax) for ax in support)

    @property
    def support(self):
        return self._support

    def __call__(self, t, s):
        return self.func(t, s)

    def mesh(self, coeffs, start, ts, ss):
        coeffs = np.asarray(coeffs)
        T, S = np.meshgrid(np.asarray(ts, dtype=float), np.asarray(ss, dtype=float),
                           indexing="ij")
        out = np.zeros(T.shape, dtype=np.result_type(coeffs, float))
        for (i, j), c in np.ndenumerate(coeffs):
            if c != 0:
                out += c * self.func(T - (start[0] + i), S - (start[1] + j))
        return out

    def __str__(self):
        return f"Phi{self._support}"


def _lattice_1d(support, t):
    lo, hi = support
    return np.arange(ceil(t - hi), floor(t - lo) + 1)


def zak_series(gen, t, x):
    """
    Sum ``K_t(x) = sum_n conj(phi(t - n)) exp(-2 pi i n x)`` directly.

    ``t`` may be any real number; ``x`` an array of points in ``[0, 1)``.
    """
    x = np.asarray(x, dtype=float)
    n = gen.lattice(t)
    w = np.conj(np.asarray(gen(t - n)))
    return np.exp(-2j * np.pi * np.multiply.outer(x, n)) @ w


@dataclass(frozen=True, eq=False)
class ZakKernel:
    """
    Samples of ``K_a`` on the grid ``x_j = j / G``.

    The grid minimum and maximum of ``|K_a|`` estimate its essential
    infimum and supremum.
    """

    generator: Generator
    a: float
    values: np.ndarray = field(repr=False)

    @property
    def grid_size(self):
        return self.values.size

    @property
    def x(self):
        return np.arange(self.grid_size) / self.grid_size

    @property
    def lower(self):
        return float(np.abs(self.values).min())

    @property
    def upper(self):
        return float(np.abs(self.values).max())

    @property
    def argmin(self):
        return float(np.argmin(np.abs(self.values)) / self.grid_size)


def zak_kernel(gen, a, G):
    """
    Compute ``K_a`` on a uniform grid of ``G`` points in ``[0, 1)``.

    Parameters
    ----------
    gen : Generator
    a : float
        Sampling offset in ``[0, 1)``.
    G : int
        Grid size, ``G >= 2``; powers of two keep refined grids nested.

    Returns
    -------
    ZakKernel
    """
    if not 0.0 <= a < 1.0:
        raise ValueError(f"offset a must lie in [0, 1), got {a}")
    if int(G) != G or G < 2:
        raise ValueError(f"grid size must be an integer >= 2, got {G}")
    G = int(G)
    x = np.arange(G) / G
    return ZakKernel(gen, float(a), _frozen(zak_series(gen, a, x)))


@dataclass(frozen=True)
class RieszCheck:
    """Outcome of :func:`riesz_condition`."""

    valid: bool
    lower: float
    upper: float
    witness: float

    def __bool__(self):
        return self.valid


def riesz_condition(kernel, tol=DEFAULT_RIESZ_TOL):
    """
    Check ``0 < ||K_a||_0 <= ||K_a||_inf < inf`` on the kernel grid.

    Returns a :class:`RieszCheck`; ``witness`` is the grid point where
    ``|K_a|`` is smallest, which locates the zero when degenerate.
    """
    lower = kernel.lower
    return RieszCheck(bool(lower > tol and np.isfinite(kernel.upper)),
                      lower, kernel.upper, kernel.argmin)


def gram_sequence(gen):
    """
    Inner products ``g_k = <phi, phi(. - k)>`` of integer shifts.

    Only B-splines are supported, through the identity
    ``<N_m, N_m(. - k)> = N_{2m}(m + k)``.

    Returns
    -------
    (numpy.ndarray, numpy.ndarray)
        Shifts ``k`` and values ``g_k``.
    """
    if gen.kind != "bspline":
        raise NotImplementedError("Gram sequence is only available for B-spline generators")
    m = gen.order
    k = np.arange(-(m - 1), m)
    return k, bspline_eval(2 * m, m + k)


def gram_symbol(gen, G):
    """``sum_k g_k exp(-2 pi i k x)`` on the grid ``j / G`` (real, positive)."""
    k, g = gram_sequence(gen)
    x = np.arange(G) / G
    return (np.exp(-2j * np.pi * np.multiply.outer(x, k)) @ g).real


@dataclass(frozen=True, eq=False)
class ZakKernel2D:
    """Samples of ``K_{a,b}(x, y)`` on the ``G x G`` grid."""

    generator: object
    a: float
    b: float
    values: np.ndarray = field(repr=False)

    @property
    def grid_size(self):
        return self.values.shape[0]

    @property
    def lower(self):
        return float(np.abs(self.values).min())

    @property
    def upper(self):
        return float(np.abs(self.values).max())

    @property
    def argmin(self):
        i, j = np.unravel_index(np.argmin(np.abs(self.values)), self.values.shape)
        return i / self.grid_size, j / self.grid_size


def zak_kernel_2d(gen, a, b, G):
    """
    ``K_{a,b}(x, y) = sum_{n,m} conj(Phi(a-n, b-m)) e^{-2 pi i (n x + m y)}``.

    The sum runs over the lattice points inside the support box of
    ``gen``; separability is not assumed.
    """
    for v in (a, b):
        if not 0.0 <= v < 1.0:
            raise ValueError(f"offsets must lie in [0, 1), got {v}")
    if int(G) != G or G < 2:
        raise ValueError(f"grid size must be an integer >= 2, got {G}")
    G = int(G)
    sx, sy = gen.support
    n = _lattice_1d(sx, a)
    m = _lattice_1d(sy, b)
    P = np.conj(gen(np.subtract(a, n)[:, None], np.subtract(b, m)[None, :]))
    x = np.arange(G) / G
    Ex = np.exp(-2j * np.pi * np.multiply.outer(x, n))
    Ey = np.exp(-2j * np.pi * np.multiply.outer(x, m))
    return ZakKernel2D(gen, float(a), float(b), _frozen(Ex @ P @ Ey.T))
