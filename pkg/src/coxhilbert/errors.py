"""Exception types shared across the package."""


class BudgetExceeded(RuntimeError):
    """A computation would exceed a configured resource cap."""


class NotHilbertPolynomial(ValueError):
    """A polynomial has no Gotzmann representation."""


class StabilizationError(RuntimeError):
    """The Hilbert function did not become polynomial within the retry cap."""


class InterpolationError(ValueError):
    """Grid values are not a polynomial of the claimed degree."""


class ParseError(ValueError):
    """Malformed ideal, polynomial or slice input."""
