"""Exception hierarchy shared by every module of the package."""


class IFunctionError(Exception):
    """Base class for all package errors."""


class DomainError(IFunctionError, ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(DomainError):
    """A gamma factor in a numerator was evaluated at (or next to) a pole."""

    def __init__(self, message, block=None, index=None):
        super().__init__(message)
        self.block = block
        self.index = index


class BranchError(DomainError):
    """A real power of a negative base was requested with a non-integer exponent."""


class EmptyStripError(DomainError):
    """No vertical line separates the left and right pole families."""

    def __init__(self, lower, upper):
        super().__init__(f"pole-separating strip ({lower!r}, {upper!r}) is empty")
        self.lower = lower
        self.upper = upper


class StripError(DomainError):
    """A Mellin transform was requested outside its strip of validity."""


class DivergenceError(IFunctionError, ArithmeticError):
    """The contour integral does not converge for the requested argument."""


class QuadratureError(IFunctionError, ArithmeticError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class NonConvergenceError(QuadratureError):
    """An oracle integral did not converge."""


class NormalizationError(IFunctionError, ArithmeticError):
    """The normalizing constant of a distribution is not finite and positive."""


class NegativeDensityError(DomainError):
    """A probed density value is negative."""

    def __init__(self, x, value):
        super().__init__(f"density is negative at x={x!r}: {value!r}")
        self.x = x
        self.value = value


class MomentDivergenceError(DivergenceError):
    """The requested moment does not exist."""


class SeriesDivergenceError(DivergenceError):
    """A series representation failed to converge within its cap."""


class RestrictionError(DomainError):
    """Parameters violate the sign restrictions of the I-FIG family."""


class BracketError(IFunctionError, ArithmeticError):
    """A root could not be bracketed inside the support."""
