"""
Algebra Module
Exact rational polynomial arithmetic and the elimination toolkit.
"""

from src.algebra.errors import (
    AlgebraError,
    DegreeTooHigh,
    DegreeZero,
    NonInvertibleDenominator,
    NotBivariate,
    NotSquarefree,
    PolynomialSyntaxError,
    ZeroPolynomial,
)
from src.algebra.polynomial import (
    PARAMETERS,
    MultiPoly,
    RationalFunction,
    UniPoly,
    canonical_texts,
    parse_poly,
    sort_key,
    vector_text,
)
from src.algebra.operations import (
    Irreducibility,
    IrreducibilityResult,
    abs_irreducible_quadratic,
    absolutely_irreducible,
    cauchy_bound,
    cross,
    det3,
    dot,
    factor_small,
    is_perfect_square,
    resultant,
    squarefree_part,
    sturm_real_roots,
    substitute_linear,
)
from src.algebra.number_field import (
    FieldElement,
    NumberField,
    minimal_polynomial,
    poly_gcd,
    rational_point,
    root_of_linear,
)

__all__ = [
    'AlgebraError',
    'DegreeTooHigh',
    'DegreeZero',
    'NonInvertibleDenominator',
    'NotBivariate',
    'NotSquarefree',
    'PolynomialSyntaxError',
    'ZeroPolynomial',
    'PARAMETERS',
    'MultiPoly',
    'RationalFunction',
    'UniPoly',
    'canonical_texts',
    'parse_poly',
    'sort_key',
    'vector_text',
    'Irreducibility',
    'IrreducibilityResult',
    'abs_irreducible_quadratic',
    'absolutely_irreducible',
    'cauchy_bound',
    'cross',
    'det3',
    'dot',
    'factor_small',
    'is_perfect_square',
    'resultant',
    'squarefree_part',
    'sturm_real_roots',
    'substitute_linear',
    'FieldElement',
    'NumberField',
    'minimal_polynomial',
    'poly_gcd',
    'rational_point',
    'root_of_linear',
]
