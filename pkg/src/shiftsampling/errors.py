"""Exception hierarchy shared by every module of the package."""


class SamplingError(Exception):
    """Base class for all errors raised by shiftsampling."""


class InvalidOrderError(SamplingError, ValueError):
    """B-spline order below 1."""


class DegenerateKernelError(SamplingError):
    """The Zak kernel has (numerically) zero lower bound on the grid.

    Attributes
    ----------
    witness : float
        Grid point ``x`` in ``[0, 1)`` where ``|K_a(x)|`` is smallest.
    lower : float
        The grid minimum of ``|K_a|``.
    """

    def __init__(self, message, witness, lower):
        super().__init__(message)
        self.witness = witness
        self.lower = lower


class InsufficientGridError(SamplingError, ValueError):
    """Grid too coarse for the requested coefficient radius."""


class SingularSchemeError(SamplingError):
    """Square scheme matrix with vanishing determinant."""


class NotAFrameError(SamplingError):
    """Redundant scheme matrix whose rank is below its period."""


class SchemeError(SamplingError, ValueError):
    """Malformed operator spec or scheme layout."""


class WindowOverflowError(SchemeError):
    """An operator reaches outside the period window."""


class UnderdeterminedError(SchemeError):
    """Fewer channels than the period."""


class CoverageError(SamplingError):
    """Sample window does not cover the evaluation grid.

    Attributes
    ----------
    required : tuple of (int, int)
        Inclusive range of sample indices the evaluation needs, per axis.
    """

    def __init__(self, message, required):
        super().__init__(message)
        self.required = required
