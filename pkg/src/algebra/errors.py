"""
Algebra Errors
Exceptions raised by the exact-algebra layer.
"""


class AlgebraError(ValueError):
    """Base class for exact-algebra failures."""


class DegreeZero(AlgebraError):
    """An operation needed positive degree in a variable."""


class ZeroPolynomial(AlgebraError):
    """The zero polynomial was passed where a nonzero one is required."""


class NotSquarefree(AlgebraError):
    """A Sturm count was requested for a polynomial with repeated roots."""


class NotBivariate(AlgebraError):
    """The discriminant criterion was asked about more than two variables."""


class DegreeTooHigh(AlgebraError):
    """Small-degree factorization was asked about a polynomial of degree > 6."""


class NonInvertibleDenominator(AlgebraError):
    """A denominator vanishes in the number field of an algebraic point."""


class PolynomialSyntaxError(AlgebraError):
    """Polynomial text could not be read."""
