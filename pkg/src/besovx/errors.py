"""Exception types shared across the toolkit."""


class BesovxError(Exception):
    """Base class for all toolkit errors."""


class InvalidInputError(BesovxError, ValueError):
    """Input data violates a precondition (non-finite values, bad exponent range, ...)."""


class GridMismatchError(BesovxError, ValueError):
    """Two objects that must share a grid do not."""


class DomainTagError(BesovxError, ValueError):
    """A spatial-domain operation received a spectral function or vice versa."""


class NumericRangeError(BesovxError, ArithmeticError):
    """A bracketing/bisection search failed to converge (overflow or degenerate input)."""


class ResolutionError(BesovxError, ValueError):
    """The grid is too coarse for the requested construction."""
