"""
Enumeration Module
Orderly generation of configuration tables and matching against the registry.
"""

from src.enumeration.errors import CountMismatch, InfeasibleCensus
from src.enumeration.enumerator import (
    EnumeratedClass,
    SearchNode,
    enumerate_tables,
    match_registry,
    write_enumeration,
)

__all__ = [
    'CountMismatch',
    'InfeasibleCensus',
    'EnumeratedClass',
    'SearchNode',
    'enumerate_tables',
    'match_registry',
    'write_enumeration',
]
