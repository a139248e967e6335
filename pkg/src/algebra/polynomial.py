"""
Polynomial Types
Exact sparse polynomials in the parameters a, b, c, d, their quotients, and
dense univariate polynomials, all over the rationals.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import sympy
from sympy import Poly, QQ, Rational
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

from src.algebra.errors import PolynomialSyntaxError

logger = logging.getLogger(__name__)

# Parameter alphabet; a < b < c < d in every term order used here
PARAMETERS: Tuple[str, ...] = ('a', 'b', 'c', 'd')
SYMBOLS: Tuple[sympy.Symbol, ...] = tuple(sympy.Symbol(name) for name in PARAMETERS)
SYMBOL_BY_NAME: Dict[str, sympy.Symbol] = dict(zip(PARAMETERS, SYMBOLS))

_PARSE_TRANSFORMS = standard_transformations + (convert_xor, implicit_multiplication_application)

Scalar = Union[int, Fraction, Rational]


def symbol(name: str) -> sympy.Symbol:
    """Return the sympy symbol of a parameter name."""
    if name not in SYMBOL_BY_NAME:
        raise ValueError(f"Unknown parameter '{name}', expected one of {PARAMETERS}")
    return SYMBOL_BY_NAME[name]


def _as_rational(value: Scalar) -> Rational:
    if isinstance(value, Fraction):
        return Rational(value.numerator, value.denominator)
    return Rational(value)


@dataclass(frozen=True, eq=False)
class MultiPoly:
    """
    Polynomial over QQ in the fixed parameter alphabet.

    The wrapped sympy Poly always carries all four generators so that two
    polynomials compare structurally regardless of which parameters occur.
    """

    poly: Poly

    # --- construction -------------------------------------------------

    @classmethod
    def from_expr(cls, expr) -> 'MultiPoly':
        return cls(Poly(expr, *SYMBOLS, domain=QQ))

    @classmethod
    def from_terms(cls, terms: Mapping[Tuple[int, ...], Scalar]) -> 'MultiPoly':
        data = {monom: _as_rational(c) for monom, c in terms.items() if c != 0}
        if not data:
            return cls.zero()
        return cls(Poly.from_dict(data, *SYMBOLS, domain=QQ))

    @classmethod
    def constant(cls, value: Scalar) -> 'MultiPoly':
        return cls.from_expr(_as_rational(value))

    @classmethod
    def zero(cls) -> 'MultiPoly':
        return cls.constant(0)

    @classmethod
    def one(cls) -> 'MultiPoly':
        return cls.constant(1)

    @classmethod
    def variable(cls, name: str) -> 'MultiPoly':
        return cls.from_expr(symbol(name))

    @staticmethod
    def coerce(value: Union['MultiPoly', Scalar]) -> 'MultiPoly':
        if isinstance(value, MultiPoly):
            return value
        return MultiPoly.constant(value)

    # --- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        return MultiPoly(self.poly + MultiPoly.coerce(other).poly)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        return MultiPoly(self.poly - MultiPoly.coerce(other).poly)

    def __rsub__(self, other):
        return MultiPoly(MultiPoly.coerce(other).poly - self.poly)

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        return MultiPoly(self.poly * MultiPoly.coerce(other).poly)

    __rmul__ = __mul__

    def __neg__(self) -> 'MultiPoly':
        return MultiPoly(-self.poly)

    def __pow__(self, exponent: int) -> 'MultiPoly':
        return MultiPoly(self.poly ** exponent)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Rational)):
            other = MultiPoly.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self) -> int:
        return hash(tuple(self.poly.terms()))

    # --- inspection ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    @property
    def is_constant(self) -> bool:
        return self.poly.is_ground

    def constant_value(self) -> Rational:
        """Return the value of a constant polynomial."""
        if not self.is_constant:
            raise ValueError(f"Polynomial {self} is not constant")
        return Rational(self.poly.as_expr())

    @property
    def variables(self) -> Tuple[str, ...]:
        """Parameters that occur with positive degree, in alphabet order."""
        if self.is_zero:
            return ()
        return tuple(name for name, sym in zip(PARAMETERS, SYMBOLS) if self.poly.degree(sym) > 0)

    def degree(self, var: str) -> int:
        """Degree in one parameter; -1 for the zero polynomial."""
        if self.is_zero:
            return -1
        return int(self.poly.degree(symbol(var)))

    def total_degree(self) -> int:
        if self.is_zero:
            return -1
        return int(self.poly.total_degree())

    def max_degree(self) -> int:
        """Largest degree in any single parameter."""
        if self.is_zero:
            return -1
        return max(self.degree(name) for name in PARAMETERS)

    def terms(self) -> List[Tuple[Tuple[int, ...], Rational]]:
        """Terms in descending graded lexicographic order."""
        if self.is_zero:
            return []
        return self.poly.terms(order='grlex')

    def leading_coefficient(self) -> Rational:
        if self.is_zero:
            return Rational(0)
        return self.terms()[0][1]

    def coefficients_in(self, var: str) -> List['MultiPoly']:
        """
        Coefficients of the polynomial viewed as a polynomial in one variable.

        Args:
            var: Parameter name

        Returns:
            List c where self = sum(c[i] * var**i); empty for the zero polynomial
        """
        if self.is_zero:
            return []
        idx = PARAMETERS.index(var)
        buckets: Dict[int, Dict[Tuple[int, ...], Rational]] = {}
        for monom, coeff in self.poly.terms():
            power = monom[idx]
            rest = monom[:idx] + (0,) + monom[idx + 1:]
            buckets.setdefault(power, {})[rest] = coeff
        top = max(buckets)
        return [MultiPoly.from_terms(buckets.get(i, {})) for i in range(top + 1)]

    # --- normalization and algebra --------------------------------------

    def normalized(self) -> 'MultiPoly':
        """Primitive integer form with positive leading coefficient (grlex)."""
        if self.is_zero:
            return self
        coeffs = [Rational(c) for _, c in self.poly.terms()]
        denom = reduce(lcm, (int(c.q) for c in coeffs), 1)
        content = reduce(gcd, (abs(int(c.p)) * (denom // int(c.q)) for c in coeffs), 0)
        sign = 1 if self.leading_coefficient() > 0 else -1
        return MultiPoly(self.poly.mul_ground(Rational(sign * denom, content)))

    def monic(self) -> 'MultiPoly':
        if self.is_zero:
            return self
        return MultiPoly(self.poly.mul_ground(1 / self.leading_coefficient()))

    def gcd(self, other: 'MultiPoly') -> 'MultiPoly':
        return MultiPoly(self.poly.gcd(other.poly)).normalized()

    def divides(self, other: 'MultiPoly') -> bool:
        """True iff self divides other exactly."""
        if self.is_zero:
            return other.is_zero
        return other.poly.rem(self.poly).is_zero

    def exquo(self, other: 'MultiPoly') -> 'MultiPoly':
        return MultiPoly(self.poly.exquo(other.poly))

    def factor(self) -> List[Tuple['MultiPoly', int]]:
        """
        Irreducible factors over QQ, normalized and sorted by canonical text.

        Returns:
            List of (factor, multiplicity); empty for constants
        """
        if self.is_zero:
            raise ValueError("Cannot factor the zero polynomial")
        if self.is_constant:
            return []
        _, factors = self.poly.factor_list()
        result = [
            (MultiPoly(Poly(f.as_expr(), *SYMBOLS, domain=QQ)).normalized(), int(m))
            for f, m in factors
        ]
        return sorted(result, key=lambda item: sort_key(item[0]))

    def squarefree(self) -> 'MultiPoly':
        """Product of the distinct irreducible factors."""
        if self.is_zero or self.is_constant:
            return self.normalized()
        return reduce(lambda acc, item: acc * item[0], self.factor(), MultiPoly.one()).normalized()

    def substitute(self, var: str, value: 'MultiPoly') -> 'MultiPoly':
        """Replace a parameter by a polynomial."""
        coeffs = self.coefficients_in(var)
        result = MultiPoly.zero()
        for coeff in reversed(coeffs):
            result = result * value + coeff
        return result

    def evaluate(self, values: Mapping[str, Scalar]) -> Rational:
        """
        Evaluate at a rational point.

        Args:
            values: Parameter name -> rational value; must cover every occurring parameter

        Returns:
            The exact value

        Raises:
            ValueError: If an occurring parameter has no value
        """
        missing = [v for v in self.variables if v not in values]
        if missing:
            raise ValueError(f"No value given for parameters {missing} of {self}")
        point = [_as_rational(values[name]) if name in values else Rational(0) for name in PARAMETERS]
        total = Rational(0)
        for monom, coeff in self.poly.terms():
            term = Rational(coeff)
            for value, exp in zip(point, monom):
                if exp:
                    term *= value ** exp
            total += term
        return total

    def as_expr(self):
        return self.poly.as_expr()

    # --- text ---------------------------------------------------------

    def to_text(self) -> str:
        """Canonical text: grlex order, explicit '*' and '^'."""
        if self.is_zero:
            return '0'
        pieces: List[str] = []
        for i, (monom, coeff) in enumerate(self.terms()):
            coeff = Rational(coeff)
            factors = [
                name if exp == 1 else f"{name}^{exp}"
                for name, exp in zip(PARAMETERS, monom) if exp
            ]
            magnitude = abs(coeff)
            if factors and magnitude == 1:
                body = '*'.join(factors)
            elif factors:
                body = f"{magnitude}*" + '*'.join(factors)
            else:
                body = str(magnitude)
            if i == 0:
                pieces.append(f"-{body}" if coeff < 0 else body)
            else:
                pieces.append(f" - {body}" if coeff < 0 else f" + {body}")
        return ''.join(pieces)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"MultiPoly('{self.to_text()}')"


def sort_key(p: MultiPoly) -> Tuple[int, str]:
    """Canonical sort key for constraint lists: total degree, then text."""
    return (p.total_degree(), p.to_text())


def parse_poly(text: str) -> MultiPoly:
    """
    Read a polynomial in the canonical text format.

    Implicit multiplication and '**' are accepted as well.

    Args:
        text: Polynomial text over the parameters a, b, c, d

    Returns:
        Parsed polynomial (not normalized)

    Raises:
        PolynomialSyntaxError: If the text is not a polynomial in the parameters
    """
    if text is None or not str(text).strip():
        raise PolynomialSyntaxError("Empty polynomial text")
    try:
        expr = parse_expr(str(text), local_dict=dict(SYMBOL_BY_NAME), transformations=_PARSE_TRANSFORMS)
    except Exception as e:  # tokenizer errors surface as assorted types
        raise PolynomialSyntaxError(f"Cannot parse polynomial '{text}': {e}") from e
    stray = {str(s) for s in getattr(expr, 'free_symbols', set())} - set(PARAMETERS)
    if stray:
        raise PolynomialSyntaxError(f"Unknown symbols {sorted(stray)} in '{text}'")
    try:
        return MultiPoly.from_expr(expr)
    except sympy.PolynomialError as e:
        raise PolynomialSyntaxError(f"'{text}' is not a polynomial: {e}") from e


@dataclass(frozen=True, eq=False)
class RationalFunction:
    """
    Quotient num/den of polynomials in lowest terms.

    The denominator is monic in grlex order, so equal functions have equal
    representations.
    """

    num: MultiPoly
    den: MultiPoly

    @classmethod
    def make(cls, num: Union[MultiPoly, Scalar], den: Union[MultiPoly, Scalar] = 1) -> 'RationalFunction':
        num = MultiPoly.coerce(num)
        den = MultiPoly.coerce(den)
        if den.is_zero:
            raise ZeroDivisionError(f"Zero denominator for numerator {num}")
        if num.is_zero:
            return cls(MultiPoly.zero(), MultiPoly.one())
        common = num.poly.gcd(den.poly)
        if not common.is_ground:
            num = MultiPoly(num.poly.exquo(common))
            den = MultiPoly(den.poly.exquo(common))
        lead = den.leading_coefficient()
        return cls(MultiPoly(num.poly.mul_ground(1 / lead)), MultiPoly(den.poly.mul_ground(1 / lead)))

    @staticmethod
    def coerce(value) -> 'RationalFunction':
        if isinstance(value, RationalFunction):
            return value
        return RationalFunction.make(value)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.is_constant

    @property
    def is_constant(self) -> bool:
        return self.num.is_constant and self.den.is_constant

    @property
    def variables(self) -> Tuple[str, ...]:
        names = set(self.num.variables) | set(self.den.variables)
        return tuple(name for name in PARAMETERS if name in names)

    def __add__(self, other):
        other = RationalFunction.coerce(other)
        return RationalFunction.make(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = RationalFunction.coerce(other)
        return RationalFunction.make(self.num * other.den - other.num * self.den, self.den * other.den)

    def __rsub__(self, other):
        return RationalFunction.coerce(other) - self

    def __mul__(self, other):
        other = RationalFunction.coerce(other)
        return RationalFunction.make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RationalFunction.coerce(other)
        if other.is_zero:
            raise ZeroDivisionError(f"Division of {self} by zero")
        return RationalFunction.make(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) / self

    def __neg__(self) -> 'RationalFunction':
        return RationalFunction(-self.num, self.den)

    def __eq__(self, other) -> bool:
        if isinstance(other, (MultiPoly, int, Fraction, Rational)):
            other = RationalFunction.coerce(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def evaluate(self, values: Mapping[str, Scalar]) -> Rational:
        den = self.den.evaluate(values)
        if den == 0:
            raise ZeroDivisionError(f"Denominator {self.den} vanishes at {dict(values)}")
        return self.num.evaluate(values) / den

    def to_text(self) -> str:
        if self.den == MultiPoly.one():
            return self.num.to_text()
        return f"({self.num.to_text()})/({self.den.to_text()})"

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"RationalFunction('{self.to_text()}')"


@dataclass(frozen=True)
class UniPoly:
    """
    Dense univariate polynomial.

    Attributes:
        variable: Parameter name
        coefficients: Rationals, constant term first and leading coefficient last
    """

    variable: str
    coefficients: Tuple[Rational, ...]

    def __post_init__(self):
        coeffs = [Rational(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, 'coefficients', tuple(coeffs))

    @classmethod
    def from_poly(cls, poly: Poly, variable: str) -> 'UniPoly':
        # sympy lists coefficients highest degree first
        return cls(variable, tuple(reversed([Rational(c) for c in poly.all_coeffs()])))

    @classmethod
    def from_multipoly(cls, p: MultiPoly, variable: Optional[str] = None) -> 'UniPoly':
        """
        View a polynomial in at most one parameter as univariate.

        Raises:
            ValueError: If more than one parameter occurs
        """
        names = p.variables
        if len(names) > 1:
            raise ValueError(f"{p} is not univariate (parameters {names})")
        var = names[0] if names else (variable or PARAMETERS[0])
        if variable is not None and names and names[0] != variable:
            raise ValueError(f"{p} is a polynomial in {names[0]}, not {variable}")
        if p.is_zero:
            return cls(var, ())
        return cls(var, tuple(c.constant_value() for c in p.coefficients_in(var)))

    @classmethod
    def parse(cls, text: str, variable: Optional[str] = None) -> 'UniPoly':
        return cls.from_multipoly(parse_poly(text), variable)

    @property
    def symbol(self) -> sympy.Symbol:
        return symbol(self.variable)

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def degree(self) -> int:
        return len(self.coefficients) - 1

    def leading_coefficient(self) -> Rational:
        return self.coefficients[-1] if self.coefficients else Rational(0)

    def to_poly(self) -> Poly:
        return Poly(list(reversed(self.coefficients)) or [0], self.symbol, domain=QQ)

    def to_multipoly(self) -> MultiPoly:
        terms: Dict[Tuple[int, ...], Rational] = {}
        idx = PARAMETERS.index(self.variable)
        for power, coeff in enumerate(self.coefficients):
            monom = [0] * len(PARAMETERS)
            monom[idx] = power
            terms[tuple(monom)] = coeff
        return MultiPoly.from_terms(terms)

    def primitive(self) -> 'UniPoly':
        """Integer primitive form with positive leading coefficient."""
        return UniPoly.from_multipoly(self.to_multipoly().normalized(), self.variable)

    def __call__(self, value: Scalar) -> Rational:
        x = _as_rational(value)
        result = Rational(0)
        for coeff in reversed(self.coefficients):
            result = result * x + coeff
        return result

    def to_text(self) -> str:
        return self.to_multipoly().to_text()

    def __str__(self) -> str:
        return self.to_text()


def canonical_texts(polys: Iterable[MultiPoly]) -> List[str]:
    """Normalized, deduplicated and sorted canonical texts."""
    unique = {p.normalized() for p in polys if not p.is_zero}
    return [p.to_text() for p in sorted(unique, key=sort_key)]


def vector_text(vector: Sequence[RationalFunction]) -> str:
    return '[' + ', '.join(entry.to_text() for entry in vector) + ']'
