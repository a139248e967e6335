"""
Realization Errors
Exceptions raised while coordinatizing a configuration table.
"""


class RealizationError(ValueError):
    """Base class for realization failures."""


class NoGrid(RealizationError):
    """No two triple points have disjoint line sets, or a grid hint is invalid."""


class InconsistentIncidence(RealizationError):
    """A forced coordinate vanishes identically."""

    def __init__(self, element: str, via: list):
        self.element = element
        self.via = via
        super().__init__(f"Every pair among {via} gives the zero vector for {element}")


class ParameterBudgetExceeded(RealizationError):
    """A fifth parameter would be needed."""


class DisconnectedTable(RealizationError):
    """Some lines or points are not reachable from the grid."""
