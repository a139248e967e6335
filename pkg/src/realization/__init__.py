"""
Realization Module
Grid gauge, coordinate propagation and exact specialization.
"""

from src.realization.errors import (
    DisconnectedTable,
    InconsistentIncidence,
    NoGrid,
    ParameterBudgetExceeded,
    RealizationError,
)
from src.realization.grid import GridChoice, find_grid
from src.realization.realizer import (
    Condition,
    PlanStep,
    RealizationState,
    introduce_parameter,
    line_equation_text,
    normalize_vector,
    propagate,
    realize,
    seed_grid,
)
from src.realization.specialize import specialize

__all__ = [
    'DisconnectedTable',
    'InconsistentIncidence',
    'NoGrid',
    'ParameterBudgetExceeded',
    'RealizationError',
    'GridChoice',
    'find_grid',
    'Condition',
    'PlanStep',
    'RealizationState',
    'introduce_parameter',
    'line_equation_text',
    'normalize_vector',
    'propagate',
    'realize',
    'seed_grid',
    'specialize',
]
