"""
Scheme matrices and their duals.

A period-``p`` sampling scheme is a ``q x p`` matrix ``M`` whose row
``j`` combines the partition ``x_{pn+w}, ..., x_{pn+w+p-1}`` of a Riesz
basis into channel ``j``.  For ``q = p`` the new family is a Riesz basis
iff ``det M != 0`` and the dual is read off the columns of ``M^{-1}``;
for ``q > p`` with full rank it is a frame and any left inverse ``N``
gives a dual frame.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.linalg

from .errors import DegenerateKernelError, NotAFrameError, SingularSchemeError
from .generators import riesz_condition

__all__ = [
    "SchemeMatrix",
    "DualMatrix",
    "invert_scheme",
    "left_inverse",
    "kronecker",
    "biorthogonality_check",
    "as_fraction",
]

RANK_TOL = 1e-10
DET_TOL = 1e-12


def as_fraction(v, max_den=1 << 20):
    """Exact ``Fraction`` for ``v`` if it is a modest rational, else ``None``."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, np.integer)):
        return Fraction(int(v))
    v = complex(v)
    if v.imag != 0 or not np.isfinite(v.real):
        return None
    f = Fraction(v.real)
    return f if f.denominator <= max_den else None


def _exact_rows(a):
    rows = []
    for row in a:
        fr = [as_fraction(v) for v in row]
        if any(v is None for v in fr):
            return None
        rows.append(tuple(fr))
    return tuple(rows)


def _to_array(exact):
    return np.array([[float(v) for v in row] for row in exact], dtype=float)


def _frozen(a):
    a = np.array(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class SchemeMatrix:
    """
    A ``q x p`` scheme matrix with its bookkeeping.

    Attributes
    ----------
    matrix : numpy.ndarray
        Float (or complex) entries.
    labels : tuple of str
        One label per row, e.g. ``'fwd^2@0'``.
    window_start : int
        Offset of the first partition column relative to ``pn``.
    exact : tuple of tuple of Fraction or None
        Rational entries when the matrix is rational.
    factors : tuple of SchemeMatrix or None
        The 1-D factors of a Kronecker product.
    """

    matrix: np.ndarray = field(repr=False)
    labels: tuple = ()
    window_start: int = 0
    exact: tuple = field(default=None, repr=False)
    factors: tuple = field(default=None, repr=False)

    @classmethod
    def from_rows(cls, rows, labels=None, window_start=0):
        exact = _exact_rows(rows)
        if exact is not None:
            matrix = _to_array(exact)
        else:
            matrix = np.asarray(rows)
            matrix = matrix.astype(complex if np.iscomplexobj(matrix) else float)
        if matrix.ndim != 2:
            raise ValueError("scheme matrix must be 2-D")
        if labels is None:
            labels = tuple(f"row{j}" for j in range(matrix.shape[0]))
        if len(labels) != matrix.shape[0]:
            raise ValueError("need one label per row")
        return cls(_frozen(matrix), tuple(labels), int(window_start), exact)

    @property
    def shape(self):
        return self.matrix.shape

    @property
    def period(self):
        return self.matrix.shape[1]

    @property
    def channels(self):
        return self.matrix.shape[0]

    @property
    def is_frame(self):
        return self.channels > self.period

    @property
    def offsets(self):
        """Partition offsets ``w, ..., w + p - 1`` (1-D schemes)."""
        return self.window_start + np.arange(self.period)

    def positions(self):
        """
        Lattice shift of every partition column.

        1-D schemes give ints; Kronecker products give ``(s1, s2)``
        tuples in row-of-first-factor-major order.
        """
        if self.factors is None:
            return [int(s) for s in self.offsets]
        first, second = self.factors
        return [(int(s1), int(s2)) for s1 in first.offsets for s2 in second.offsets]


@dataclass(frozen=True, eq=False)
class DualMatrix:
    """
    ``M^{-1}`` (basis mode) or a left inverse ``N`` (frame mode), ``p x q``.

    Column ``j`` holds the weights of the reconstruction kernel paired
    with channel ``j``.
    """

    matrix: np.ndarray = field(repr=False)
    mode: str
    determinant: complex = None
    exact: tuple = field(default=None, repr=False)

    def column(self, j):
        return self.matrix[:, j]


def _exact_inverse(rows):
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == k)) for k in range(n)] for i, r in enumerate(rows)]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            return Fraction(0), None
        if piv != c:
            aug[c], aug[piv] = aug[piv], aug[c]
            det = -det
        pv = aug[c][c]
        det *= pv
        aug[c] = [v / pv for v in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[c])]
    return det, tuple(tuple(r[n:]) for r in aug)


def invert_scheme(M):
    """
    Invert a square scheme matrix.

    Rational matrices are inverted exactly and then cast to floats, so
    integer tables compare exactly.

    Raises
    ------
    ValueError
        If ``M`` is not square.
    SingularSchemeError
        If ``det M`` vanishes (relative to ``max|M|**p`` in floating point).
    """
    q, p = M.shape
    if q != p:
        raise ValueError(f"invert_scheme needs a square matrix, got {q}x{p}; use left_inverse")
    if M.exact is not None:
        det, inv = _exact_inverse(M.exact)
        if inv is None:
            raise SingularSchemeError(f"scheme {list(M.labels)} is singular (det = 0)")
        return DualMatrix(_frozen(_to_array(inv)), "basis", float(det), inv)
    A = np.asarray(M.matrix)
    det = np.linalg.det(A)
    scale = max(float(np.abs(A).max()), 1.0) ** p
    if abs(det) < DET_TOL * scale:
        raise SingularSchemeError(f"scheme {list(M.labels)} is singular (|det| = {abs(det):.3e})")
    return DualMatrix(_frozen(np.linalg.inv(A)), "basis", det)


def _rank(A, tol=RANK_TOL):
    R = scipy.linalg.qr(np.asarray(A), mode="r", pivoting=True)[0]
    d = np.abs(np.diag(R))
    if d.size == 0 or d[0] == 0:
        return 0
    return int(np.sum(d > tol * d[0]))


def left_inverse(M, U=None):
    """
    A left inverse ``N`` of a redundant scheme matrix, ``N M = I_p``.

    Every left inverse has the form ``N = M^+ + U (I_q - M M^+)`` with
    ``M^+ = (M^* M)^{-1} M^*`` the Moore-Penrose pseudo-inverse.

    Parameters
    ----------
    M : SchemeMatrix
        ``q x p`` with ``q > p``.
    U : array_like, optional
        Any ``p x q`` matrix; omitted means ``N = M^+``.

    Raises
    ------
    ValueError
        If ``q <= p``.
    NotAFrameError
        If ``rank M < p``.
    """
    q, p = M.shape
    if q <= p:
        raise ValueError(f"left_inverse needs q > p, got {q}x{p}; use invert_scheme")
    A = np.asarray(M.matrix)
    r = _rank(A)
    if r < p:
        raise NotAFrameError(f"scheme {list(M.labels)} has rank {r} < {p}: not a frame")
    Ah = A.conj().T
    pinv = np.linalg.solve(Ah @ A, Ah)
    if U is None:
        N = pinv
    else:
        U = np.asarray(U)
        if U.shape != (p, q):
            raise ValueError(f"U must be {p}x{q}, got {U.shape}")
        N = pinv + U @ (np.eye(q) - A @ pinv)
    if np.isrealobj(A) and np.isrealobj(N):
        N = N.real
    return DualMatrix(_frozen(N), "frame")


def kronecker(M1, M2):
    """
    Kronecker product ``M1 (x) M2`` of two square schemes.

    Rows and columns are ordered with the index of ``M1`` major, which
    matches the 2-D partition ``{x_{p1 n + k} (x) x~_{p2 m + k'}}``
    enumerated with ``k`` outer and ``k'`` inner.
    """
    for M in (M1, M2):
        if M.is_frame or M.channels != M.period:
            raise ValueError("kronecker expects square (basis-mode) schemes")
    labels = tuple(f"({l1},{l2})" for l1 in M1.labels for l2 in M2.labels)
    exact = None
    if M1.exact is not None and M2.exact is not None:
        exact = tuple(tuple(a * b for a in r1 for b in r2)
                      for r1 in M1.exact for r2 in M2.exact)
        matrix = _to_array(exact)
    else:
        matrix = np.kron(M1.matrix, M2.matrix)
    return SchemeMatrix(_frozen(matrix), labels, 0, exact, (M1, M2))


def biorthogonality_check(M, Minv, kernel, W=4):
    """
    Largest deviation of ``<z_{jn}, z~_{j'm}>`` from ``delta_{jj'} delta_{nm}``.

    With ``x_n = e^{-2 pi i n x} K_a`` and ``y_n = e^{-2 pi i n x} / conj(K_a)``,
    ``z_{jn} = sum_k a_{jk} x_{pn+w+k}`` and
    ``z~_{jn} = sum_k conj(b_{kj}) y_{pn+w+k}``.  Inner products use the
    rectangle rule on the kernel grid, ``|n|, |m| <= W``.

    Raises
    ------
    SingularSchemeError
        If ``M`` is square and singular.
    DegenerateKernelError
        If the kernel fails the Riesz condition.
    """
    if M.channels != M.period:
        raise ValueError("biorthogonality_check needs a square (basis-mode) scheme")
    invert_scheme(M)
    check = riesz_condition(kernel)
    if not check.valid:
        raise DegenerateKernelError(
            f"kernel degenerate at x = {check.witness:.6g} (min |K_a| = {check.lower:.3e})",
            check.witness, check.lower)
    A = np.asarray(M.matrix)
    B = np.asarray(Minv.matrix)
    q, p = A.shape
    x = kernel.x
    K = np.asarray(kernel.values)
    blocks = np.arange(-W, W + 1)
    idx = (p * blocks[:, None] + M.window_start + np.arange(p)[None, :])
    E = np.exp(-2j * np.pi * idx[..., None] * x)
    X = E * K
    Y = E / np.conj(K)
    Z = np.einsum("jk,nkg->jng", A, X).reshape(q * blocks.size, -1)
    Zd = np.einsum("kj,nkg->jng", np.conj(B), Y).reshape(q * blocks.size, -1)
    gram = Z @ Zd.conj().T / x.size
    return float(np.abs(gram - np.eye(gram.shape[0])).max())
