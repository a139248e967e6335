"""
Incidence Module
Configuration tables, census rules and canonical forms.
"""

from src.incidence.errors import (
    CensusMismatch,
    DuplicateIncidence,
    NotTriplePoint,
    ParseError,
    RepeatedPair,
    TableError,
)
from src.incidence.table import (
    ConfigTable,
    doubles,
    format_table,
    parse_table,
    read_table,
    relabel,
)
from src.incidence.census import (
    LineCensus,
    census_violations,
    double_count,
    hirzebruch_feasible,
    line_census,
    max_triples_per_line,
    six_lines_at_most_four_triples,
    validate,
)
from src.incidence.canonical import (
    CanonicalForm,
    CanonicalLabeling,
    automorphism_group_order,
    automorphisms,
    canonical_form,
    canonical_labeling,
    canonical_table,
    incidence_graph,
    is_isomorphic,
)

__all__ = [
    'CensusMismatch',
    'DuplicateIncidence',
    'NotTriplePoint',
    'ParseError',
    'RepeatedPair',
    'TableError',
    'ConfigTable',
    'doubles',
    'format_table',
    'parse_table',
    'read_table',
    'relabel',
    'LineCensus',
    'census_violations',
    'double_count',
    'hirzebruch_feasible',
    'line_census',
    'max_triples_per_line',
    'six_lines_at_most_four_triples',
    'validate',
    'CanonicalForm',
    'CanonicalLabeling',
    'automorphism_group_order',
    'automorphisms',
    'canonical_form',
    'canonical_labeling',
    'canonical_table',
    'incidence_graph',
    'is_isomorphic',
]
