"""
Channel operators and the scheme matrices they induce.

An operator acts on the samples of ``f`` around ``a + pn``: forward,
backward and central differences, the three averages, their iterates
and arbitrary finite stencils.  Within a period window of ``p``
consecutive offsets every operator is one row of the scheme matrix.

Canonical text forms::

    id@0        identity
    fwd^2@0     second forward difference
    bwd@0       first backward difference
    cdiff@0     central difference f(t+1) - f(t-1)
    avg+@0      (f(t+1) + f(t)) / 2      (also avg-, avg0)
    gen[1,-2,1]@-1   f(t-1) - 2 f(t) + f(t+1)
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .errors import SchemeError, UnderdeterminedError, WindowOverflowError
from .riesz import SchemeMatrix

__all__ = [
    "OperatorSpec",
    "SampleSet",
    "SampleSet2D",
    "parse_spec",
    "scheme_matrix",
    "apply_operators",
    "apply_operators_2d",
    "forward_scheme",
    "backward_scheme",
]

_HALF = Fraction(1, 2)

# one application of each elementary operator, as (offset, coefficient)
_STEPS = {
    "fwd": ((1, Fraction(1)), (0, Fraction(-1))),
    "bwd": ((0, Fraction(1)), (-1, Fraction(-1))),
    "cdiff": ((1, Fraction(1)), (-1, Fraction(-1))),
    "avg+": ((1, _HALF), (0, _HALF)),
    "avg-": ((0, _HALF), (-1, _HALF)),
    "avg0": ((1, _HALF), (-1, _HALF)),
}

_ALIASES = {"identity": "id", "cen": "cdiff", "del0": "cdiff"}

_SPEC_RE = re.compile(
    r"^\s*(?P<kind>[a-z]+[+\-0]?)(?:\[(?P<coeffs>[^\]]*)\])?"
    r"(?:\^(?P<order>\d+))?(?:@(?P<anchor>[+-]?\d+))?\s*$")


def _number(tok):
    tok = tok.strip()
    try:
        return Fraction(tok)
    except ValueError:
        return complex(tok.replace("i", "j"))


def _fmt(c):
    if isinstance(c, Fraction):
        return str(c)
    return repr(c)


@dataclass(frozen=True)
class OperatorSpec:
    """
    One channel operator placed at ``anchor`` inside the period window.

    Attributes
    ----------
    kind : str
        ``'id'``, ``'fwd'``, ``'bwd'``, ``'cdiff'``, ``'avg+'``,
        ``'avg-'``, ``'avg0'`` or ``'gen'``.
    order : int
        Number of iterations (ignored for ``'id'`` and ``'gen'``).
    anchor : int
        The operator is applied at ``a + pn + anchor``.
    coeffs : tuple
        Stencil of a ``'gen'`` operator; ``coeffs[i]`` multiplies
        ``f(t + i)`` before anchoring.
    """

    kind: str
    order: int = 1
    anchor: int = 0
    coeffs: tuple = ()

    def __post_init__(self):
        if self.kind not in _STEPS and self.kind not in ("id", "gen"):
            raise SchemeError(f"unknown operator kind {self.kind!r}")
        if self.kind in _STEPS and self.order < 1:
            raise SchemeError(f"{self.text}: order must be >= 1")
        if self.kind == "gen":
            if not self.coeffs or all(c == 0 for c in self.coeffs):
                raise SchemeError("generalized difference needs a nonzero stencil")

    @classmethod
    def identity(cls, anchor=0):
        return cls("id", 1, anchor)

    @classmethod
    def forward(cls, k=1, anchor=0):
        return cls("fwd", k, anchor)

    @classmethod
    def backward(cls, k=1, anchor=0):
        return cls("bwd", k, anchor)

    @classmethod
    def generalized(cls, coeffs, anchor=0):
        return cls("gen", 1, anchor, tuple(coeffs))

    @property
    def text(self):
        if self.kind == "id":
            head = "id"
        elif self.kind == "gen":
            head = "gen[" + ",".join(_fmt(c) for c in self.coeffs) + "]"
        else:
            head = self.kind if self.order == 1 else f"{self.kind}^{self.order}"
        return f"{head}@{self.anchor}"

    def __str__(self):
        return self.text

    def stencil(self):
        """
        Coefficients ``{offset: c}`` with ``(Lf)(t) = sum c f(t + offset)``.

        Built by iterating the elementary step, not from binomial tables.
        """
        if self.kind == "id":
            st = {0: Fraction(1)}
        elif self.kind == "gen":
            st = {i: c for i, c in enumerate(self.coeffs) if c != 0}
        else:
            st = {0: Fraction(1)}
            for _ in range(self.order):
                new = {}
                for o, c in st.items():
                    for d, w in _STEPS[self.kind]:
                        new[o + d] = new.get(o + d, 0) + c * w
                st = {o: c for o, c in new.items() if c != 0}
        return {o + self.anchor: c for o, c in sorted(st.items())}

    @property
    def reach(self):
        offs = list(self.stencil())
        return min(offs), max(offs)

    def symbol(self, x):
        """``sum_o c_o exp(-2 pi i o x)``: the multiplier acting on ``K_t``."""
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=complex)
        for o, c in self.stencil().items():
            out += complex(c) * np.exp(-2j * np.pi * o * x)
        return out

    def apply(self, g, axis=0):
        """
        The operator applied to a function ``g``, as a new function.

        Iterates the definition, e.g. ``D^k g(t) = D^{k-1} g(t+1) - D^{k-1} g(t)``.
        ``axis`` picks the shifted argument of a multivariate ``g``.
        """
        if self.kind == "id":
            h = g
        elif self.kind == "gen":
            h = _combine(g, [(i, c) for i, c in enumerate(self.coeffs) if c != 0], axis)
        else:
            h = g
            for _ in range(self.order):
                h = _combine(h, _STEPS[self.kind], axis)
        return _combine(h, [(self.anchor, 1)], axis) if self.anchor else h


def _combine(g, terms, axis):
    terms = [(int(d), float(c) if isinstance(c, Fraction) else c) for d, c in terms]

    def h(*args):
        out = 0
        for d, c in terms:
            shifted = list(args)
            shifted[axis] = np.add(shifted[axis], d)
            out = out + c * g(*shifted)
        return out
    return h


def parse_spec(text):
    """
    Parse the canonical text form of an operator.

    Raises
    ------
    SchemeError
        On malformed text; the message names the offending spec.
    """
    if isinstance(text, OperatorSpec):
        return text
    m = _SPEC_RE.match(str(text))
    if not m:
        raise SchemeError(f"cannot parse operator spec {text!r}")
    kind = _ALIASES.get(m["kind"], m["kind"])
    anchor = int(m["anchor"]) if m["anchor"] else 0
    order = int(m["order"]) if m["order"] else 1
    try:
        if kind == "gen":
            if m["coeffs"] is None:
                raise SchemeError("gen needs a coefficient list, e.g. gen[1,-1]@0")
            coeffs = tuple(_number(t) for t in m["coeffs"].split(","))
            return OperatorSpec("gen", 1, anchor, coeffs)
        if m["coeffs"] is not None:
            raise SchemeError("only gen takes a coefficient list")
        if kind == "id" and m["order"]:
            raise SchemeError("identity takes no order")
        return OperatorSpec(kind, order, anchor)
    except (SchemeError, ValueError) as exc:
        raise SchemeError(f"invalid operator spec {text!r}: {exc}") from None


def scheme_matrix(specs, p, window_start=None):
    """
    Scheme matrix of a list of channel operators at period ``p``.

    Parameters
    ----------
    specs : list of OperatorSpec or str
        One per channel, ``q >= p`` of them.
    p : int
        Sampling period.
    window_start : int, optional
        First offset of the period window; defaults to the smallest
        offset any operator touches (``-1`` for a scheme that uses a
        first backward difference at anchor 0).

    Returns
    -------
    SchemeMatrix
        Row ``j`` holds spec ``j`` over offsets ``window_start ...
        window_start + p - 1``.  ``q > p`` gives a frame-mode matrix.

    Raises
    ------
    UnderdeterminedError
        If ``q < p``.
    WindowOverflowError
        If an operator reaches outside the window.
    SchemeError
        If a forward/backward order is not in ``1..p-1``.
    """
    specs = [parse_spec(s) for s in specs]
    if p < 1:
        raise SchemeError(f"period must be >= 1, got {p}")
    if len(specs) < p:
        raise UnderdeterminedError(f"{len(specs)} channels for period {p}: need at least {p}")
    for s in specs:
        if s.kind in ("fwd", "bwd") and s.order > p - 1:
            raise SchemeError(f"operator spec {s.text!r}: order {s.order} exceeds p - 1 = {p - 1}")
    stencils = [s.stencil() for s in specs]
    lo = min(min(st) for st in stencils)
    hi = max(max(st) for st in stencils)
    w = lo if window_start is None else int(window_start)
    for s, st in zip(specs, stencils):
        if min(st) < w or max(st) > w + p - 1:
            raise WindowOverflowError(
                f"operator spec {s.text!r} reaches offsets {min(st)}..{max(st)}, "
                f"outside the period window {w}..{w + p - 1}")
    rows = []
    for st in stencils:
        row = [Fraction(0)] * p
        for o, c in st.items():
            row[o - w] = c
        rows.append(row)
    return SchemeMatrix.from_rows(rows, tuple(s.text for s in specs), w)


def forward_scheme(p):
    """``[id, fwd, fwd^2, ..., fwd^{p-1}]`` at anchor 0."""
    return [OperatorSpec.identity()] + [OperatorSpec.forward(k) for k in range(1, p)]


def backward_scheme(p):
    """``[id, bwd, bwd^2, ..., bwd^{p-1}]`` at anchor 0."""
    return [OperatorSpec.identity()] + [OperatorSpec.backward(k) for k in range(1, p)]


def binomial_row(k):
    """``(-1)^{k-i} C(k, i)`` for ``i = 0..k``."""
    return [(-1) ** (k - i) * comb(k, i) for i in range(k + 1)]


@dataclass(frozen=True, eq=False)
class SampleSet:
    """
    Channel samples ``c_j[n]`` at ``a + pn`` for ``n`` in a window.

    ``channels`` has shape ``(q, N)``; column ``i`` is ``n = n_start + i``.
    """

    p: int
    a: float
    n_start: int
    channels: np.ndarray
    labels: tuple = ()

    @property
    def window(self):
        return range(self.n_start, self.n_start + self.channels.shape[1])

    @property
    def counts(self):
        return [int(c.size) for c in self.channels]


@dataclass(frozen=True, eq=False)
class SampleSet2D:
    """
    Channel samples at ``(a + p1 n, b + p2 m)``.

    ``channels`` has shape ``(Q, N1, N2)`` with channel ``J = j1 * q2 + j2``.
    """

    p: tuple
    a: tuple
    n_start: tuple
    channels: np.ndarray
    labels: tuple = ()

    @property
    def window(self):
        return tuple(range(s, s + n) for s, n in zip(self.n_start, self.channels.shape[1:]))

    @property
    def counts(self):
        return [int(c.size) for c in self.channels]


def _as_range(window):
    if isinstance(window, range):
        return window
    lo, hi = window
    return range(int(lo), int(hi) + 1)


def _readonly(a):
    a = np.asarray(a)
    a.flags.writeable = False
    return a


def apply_operators(f, specs, a, p, window):
    """
    Sample every channel operator of a scheme.

    Parameters
    ----------
    f : callable
        ``f(t)`` for array ``t``, e.g. a :class:`~shiftsampling.reconstruct.Signal`.
    specs : list of OperatorSpec or str
    a : float
        Offset in ``[0, 1)``.
    p : int
        Period.
    window : range or (int, int)
        Block indices ``n`` (inclusive pair or range).

    Returns
    -------
    SampleSet
        ``channels[j, i] = (L_j f)(a + p n_i)``.
    """
    specs = [parse_spec(s) for s in specs]
    window = _as_range(window)
    t = a + p * np.asarray(window, dtype=float)
    channels = np.array([s.apply(f)(t) for s in specs])
    return SampleSet(int(p), float(a), window.start, _readonly(channels),
                     tuple(s.text for s in specs))


def apply_operators_2d(f, specs_x, specs_y, ab, periods, windows):
    """
    Sample the Kronecker channels ``L_{j1} (x) L_{j2}`` of a 2-D scheme.

    ``f(ts, ss)`` must evaluate on the mesh ``ts x ss`` (as
    :class:`~shiftsampling.reconstruct.Signal2D` does).  The t-operator
    shifts the first argument, the s-operator the second.
    """
    specs_x = [parse_spec(s) for s in specs_x]
    specs_y = [parse_spec(s) for s in specs_y]
    wx, wy = (_as_range(w) for w in windows)
    ts = ab[0] + periods[0] * np.asarray(wx, dtype=float)
    ss = ab[1] + periods[1] * np.asarray(wy, dtype=float)
    channels, labels = [], []
    for sx in specs_x:
        gx = sx.apply(f, axis=0)
        for sy in specs_y:
            channels.append(sy.apply(gx, axis=1)(ts, ss))
            labels.append(f"({sx.text},{sy.text})")
    return SampleSet2D(tuple(int(v) for v in periods), tuple(float(v) for v in ab),
                       (wx.start, wy.start), _readonly(np.array(channels)), tuple(labels))
