"""
Moduli Module
Triangularization and classification of realization constraint systems.
"""

from src.moduli.errors import EliminationOverflow
from src.moduli.system import ConstraintSystem, Substitution, main_variable
from src.moduli.triangularize import DEFAULT_MAX_DEGREE, triangularize
from src.moduli.classifier import (
    AlgebraicPoint,
    ModuliReport,
    Verdict,
    check_degenerations,
    classify,
    root_from_values,
)

__all__ = [
    'EliminationOverflow',
    'ConstraintSystem',
    'Substitution',
    'main_variable',
    'DEFAULT_MAX_DEGREE',
    'triangularize',
    'AlgebraicPoint',
    'ModuliReport',
    'Verdict',
    'check_degenerations',
    'classify',
    'root_from_values',
]
