"""
Polynomial Operations
Determinants, resultants and the univariate toolkit used for elimination:
squarefree parts, perfect-square and Sturm tests, small factorizations and
the discriminant criterion for absolute irreducibility.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

import sympy
from sympy import Poly, QQ, Rational

from src.algebra.errors import (
    DegreeTooHigh,
    DegreeZero,
    NotBivariate,
    NotSquarefree,
    ZeroPolynomial,
)
from src.algebra.polynomial import (
    SYMBOLS,
    MultiPoly,
    RationalFunction,
    UniPoly,
    symbol,
)

logger = logging.getLogger(__name__)

Entry = Union[RationalFunction, MultiPoly, int]
Vector = Tuple[RationalFunction, RationalFunction, RationalFunction]

MAX_FACTOR_DEGREE = 6


class Irreducibility(str, Enum):
    IRREDUCIBLE = 'Irreducible'
    REDUCIBLE = 'Reducible'
    NOT_APPLICABLE = 'NotApplicable'
    UNKNOWN = 'Unknown'


# --- vectors over the function field ---------------------------------------

def as_vector(entries: Sequence[Entry]) -> Vector:
    if len(entries) != 3:
        raise ValueError(f"Projective vectors have 3 entries, got {len(entries)}")
    return tuple(RationalFunction.coerce(e) for e in entries)


def cross(u: Sequence[Entry], v: Sequence[Entry]) -> Vector:
    """Cross product of two projective triples."""
    u, v = as_vector(u), as_vector(v)
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def dot(u: Sequence[Entry], v: Sequence[Entry]) -> RationalFunction:
    u, v = as_vector(u), as_vector(v)
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def is_zero_vector(v: Sequence[RationalFunction]) -> bool:
    return all(RationalFunction.coerce(e).is_zero for e in v)


def det3(rows: Sequence[Sequence[Entry]]) -> MultiPoly:
    """
    Determinant of a 3x3 matrix of rational functions.

    Args:
        rows: Three triples of rational functions (or polynomials)

    Returns:
        Numerator of the determinant, primitive with positive leading
        coefficient; the zero polynomial iff the determinant vanishes identically
    """
    if len(rows) != 3:
        raise ValueError(f"det3 needs 3 rows, got {len(rows)}")
    r0, r1, r2 = (as_vector(r) for r in rows)
    det = dot(r0, cross(r1, r2))
    return det.num.normalized()


# --- elimination ---------------------------------------------------------------

def resultant(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    """
    Sylvester resultant eliminating one parameter.

    Args:
        f: First polynomial
        g: Second polynomial
        var: Parameter to eliminate

    Returns:
        Normalized resultant, free of var

    Raises:
        DegreeZero: If f or g does not involve var
    """
    if f.degree(var) < 1:
        raise DegreeZero(f"{f} has degree 0 in {var}")
    if g.degree(var) < 1:
        raise DegreeZero(f"{g} has degree 0 in {var}")
    sym = symbol(var)
    others = [s for s in SYMBOLS if s != sym]
    pf = Poly(f.as_expr(), sym, *others, domain=QQ)
    pg = Poly(g.as_expr(), sym, *others, domain=QQ)
    res = pf.resultant(pg)
    logger.debug(f"res_{var}({f}, {g}) computed")
    return MultiPoly.from_expr(res.as_expr() if isinstance(res, Poly) else res).normalized()


def substitute_linear(p: MultiPoly, var: str, num: MultiPoly, den: MultiPoly) -> MultiPoly:
    """
    Substitute var = num/den and clear the denominator.

    Returns sum(c_i * num**i * den**(d - i)) for p = sum(c_i * var**i) of
    degree d in var; p itself when var does not occur.
    """
    coeffs = p.coefficients_in(var)
    top = len(coeffs) - 1
    if top < 1:
        return p
    result = MultiPoly.zero()
    for i, coeff in enumerate(coeffs):
        if coeff.is_zero:
            continue
        result = result + coeff * num ** i * den ** (top - i)
    return result


# --- univariate toolkit -----------------------------------------------------

def squarefree_part(p: UniPoly) -> UniPoly:
    """
    p / gcd(p, p'), primitive with positive leading coefficient.

    Raises:
        ZeroPolynomial: If p is zero
    """
    if p.is_zero:
        raise ZeroPolynomial("squarefree_part of the zero polynomial")
    if p.degree() == 0:
        return UniPoly(p.variable, (Rational(1),))
    return UniPoly.from_poly(p.to_poly().sqf_part(), p.variable).primitive()


def is_perfect_square(p: UniPoly) -> bool:
    """True iff every root of p has even multiplicity."""
    if p.is_zero:
        raise ZeroPolynomial("is_perfect_square of the zero polynomial")
    _, factors = p.to_poly().sqf_list()
    return all(mult % 2 == 0 for _, mult in factors)


def _sign_changes(values: List[Rational]) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


def sturm_real_roots(p: UniPoly) -> int:
    """
    Number of distinct real roots, by a Sturm chain over (-inf, inf).

    Raises:
        ZeroPolynomial: If p is zero
        NotSquarefree: If p has a repeated root
    """
    if p.is_zero:
        raise ZeroPolynomial("sturm_real_roots of the zero polynomial")
    if p.degree() == 0:
        return 0
    poly = p.to_poly()
    if poly.gcd(poly.diff()).degree() > 0:
        raise NotSquarefree(f"{p} is not squarefree")
    chain = poly.sturm()
    at_plus = [Rational(q.LC()) for q in chain]
    at_minus = [Rational(q.LC()) * (-1) ** q.degree() for q in chain]
    return _sign_changes(at_minus) - _sign_changes(at_plus)


def cauchy_bound(p: UniPoly) -> Rational:
    """Cauchy root bound 1 + max |c_i / c_n|."""
    lead = p.leading_coefficient()
    return 1 + max((abs(c / lead) for c in p.coefficients[:-1]), default=Rational(0))


def factor_small(p: UniPoly) -> List[Tuple[UniPoly, int]]:
    """
    Factorization over QQ of a polynomial of degree at most six.

    Returns:
        (primitive factor, multiplicity) pairs; empty for a nonzero constant

    Raises:
        ZeroPolynomial: If p is zero
        DegreeTooHigh: If deg p > 6
    """
    if p.is_zero:
        raise ZeroPolynomial("factor_small of the zero polynomial")
    if p.degree() > MAX_FACTOR_DEGREE:
        raise DegreeTooHigh(f"{p} has degree {p.degree()} > {MAX_FACTOR_DEGREE}")
    if p.degree() == 0:
        return []
    _, factors = p.to_poly().factor_list()
    result = [(UniPoly.from_poly(f, p.variable).primitive(), int(m)) for f, m in factors]
    return sorted(result, key=lambda item: (item[0].degree(), item[0].to_text()))


# --- absolute irreducibility --------------------------------------------------

def _is_square_over_c(p: MultiPoly) -> bool:
    if p.is_constant:
        return True
    return all(mult % 2 == 0 for _, mult in p.factor())


def _coprime(polys: Sequence[MultiPoly]) -> bool:
    nonzero = [q for q in polys if not q.is_zero]
    common = nonzero[0]
    for q in nonzero[1:]:
        common = common.gcd(q)
    return common.is_constant


def abs_irreducible_quadratic(p: MultiPoly, var: str) -> Irreducibility:
    """
    Discriminant criterion for a bivariate polynomial of degree <= 2 in var.

    Args:
        p: Polynomial in var and at most one other parameter
        var: Variable the criterion expands in

    Returns:
        Irreducible or Reducible when deg_var(p) is 1 or 2, NotApplicable otherwise

    Raises:
        NotBivariate: If more than two parameters occur
    """
    if len(p.variables) > 2:
        raise NotBivariate(f"{p} involves {p.variables}")
    status, _ = _discriminant_test(p, var)
    return status


def _discriminant_test(p: MultiPoly, var: str) -> Tuple[Irreducibility, Optional[bool]]:
    """Return the verdict and, when reducible, whether conjugation swaps the parts."""
    degree = p.degree(var)
    coeffs = p.coefficients_in(var)
    if degree == 1:
        if _coprime(coeffs):
            return Irreducibility.IRREDUCIBLE, None
        return Irreducibility.REDUCIBLE, False
    if degree != 2:
        return Irreducibility.NOT_APPLICABLE, None
    h, g, f = coeffs
    if not _coprime([f, g, h]):
        return Irreducibility.REDUCIBLE, False
    disc = g * g - 4 * f * h
    if disc.is_zero:
        # a square of a single component
        return Irreducibility.REDUCIBLE, False
    if not _is_square_over_c(disc):
        return Irreducibility.IRREDUCIBLE, None
    # disc = lambda * G^2; the sign of lambda is the sign of the leading coefficient
    exchanged = bool(disc.leading_coefficient() < 0)
    return Irreducibility.REDUCIBLE, exchanged


@dataclass(frozen=True)
class IrreducibilityResult:
    """
    Outcome of the absolute irreducibility test.

    Attributes:
        status: Irreducible, Reducible or Unknown
        variable: Variable the decisive criterion expanded in, if any
        conjugate_exchanged: For Reducible, whether complex conjugation swaps
            the two components (None when not reducible)
    """

    status: Irreducibility
    variable: Optional[str] = None
    conjugate_exchanged: Optional[bool] = None


def absolutely_irreducible(p: MultiPoly) -> IrreducibilityResult:
    """
    Decide irreducibility over C for polynomials of degree <= 2 in some variable.

    Variables are tried in order of increasing degree. Anything without a
    variable of degree 1 or 2 is Unknown.
    """
    if p.is_zero or p.is_constant:
        raise ZeroPolynomial(f"absolutely_irreducible needs a nonconstant polynomial, got {p}")
    candidates = sorted(p.variables, key=lambda v: (p.degree(v), v))
    for var in candidates:
        status, exchanged = _discriminant_test(p, var)
        if status is Irreducibility.NOT_APPLICABLE:
            continue
        logger.debug(f"{p}: {status.value} by criterion in {var}")
        return IrreducibilityResult(status, var, exchanged)
    return IrreducibilityResult(Irreducibility.UNKNOWN)
