"""
Number Fields
Exact arithmetic in QQ[x]/(m) for an irreducible m, used to evaluate
constraints, inequations and coordinates at algebraic points.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Sequence, Union

from sympy import Dummy, Poly, QQ, Rational
from sympy import resultant as sympy_resultant
from sympy.polys.polyerrors import NotInvertible

from src.algebra.errors import NonInvertibleDenominator, ZeroPolynomial
from src.algebra.polynomial import PARAMETERS, MultiPoly, RationalFunction, UniPoly, symbol

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NumberField:
    """
    The field QQ[x]/(modulus).

    Attributes:
        modulus: Irreducible univariate polynomial; its variable names the generator
    """

    modulus: UniPoly

    def __post_init__(self):
        if self.modulus.is_zero or self.modulus.degree() < 1:
            raise ZeroPolynomial(f"Number field modulus must be nonconstant, got {self.modulus}")

    @property
    def variable(self) -> str:
        return self.modulus.variable

    @property
    def degree(self) -> int:
        return self.modulus.degree()

    def _modulus_poly(self) -> Poly:
        return self.modulus.to_poly()

    def element(self, value: Union[int, Rational, Poly, UniPoly]) -> 'FieldElement':
        if isinstance(value, UniPoly):
            value = value.to_poly()
        if not isinstance(value, Poly):
            value = Poly(Rational(value), self.modulus.symbol, domain=QQ)
        return FieldElement(self, value.rem(self._modulus_poly()))

    def zero(self) -> 'FieldElement':
        return self.element(0)

    def one(self) -> 'FieldElement':
        return self.element(1)

    def generator(self) -> 'FieldElement':
        return self.element(Poly(self.modulus.symbol, self.modulus.symbol, domain=QQ))

    def evaluate(self, p: MultiPoly, point: Mapping[str, 'FieldElement']) -> 'FieldElement':
        """
        Evaluate a polynomial at a point with coordinates in this field.

        Raises:
            ValueError: If an occurring parameter has no coordinate
        """
        missing = [v for v in p.variables if v not in point]
        if missing:
            raise ValueError(f"No coordinate for {missing} when evaluating {p}")
        total = self.zero()
        for monom, coeff in p.poly.terms():
            term = self.element(Rational(coeff))
            for name, exp in zip(PARAMETERS, monom):
                if exp:
                    term = term * point[name] ** exp
            total = total + term
        return total

    def evaluate_rational(self, f: RationalFunction, point: Mapping[str, 'FieldElement']) -> 'FieldElement':
        """
        Raises:
            NonInvertibleDenominator: If the denominator vanishes at the point
        """
        den = self.evaluate(f.den, point)
        if den.is_zero:
            raise NonInvertibleDenominator(f"Denominator {f.den} vanishes modulo {self.modulus}")
        return self.evaluate(f.num, point) / den

    def univariate(self, p: MultiPoly, var: str, point: Mapping[str, 'FieldElement']) -> List['FieldElement']:
        """
        Specialize every parameter except var, giving a polynomial over the field.

        Returns:
            Coefficients constant term first, trailing zeros removed
        """
        coeffs = [self.evaluate(c, point) for c in p.coefficients_in(var)]
        return trim(coeffs)

    def __str__(self) -> str:
        return f"QQ[{self.variable}]/({self.modulus.to_text()})"


@dataclass(frozen=True, eq=False)
class FieldElement:
    field: NumberField
    rep: Poly

    def _lift(self, other) -> 'FieldElement':
        if isinstance(other, FieldElement):
            return other
        return self.field.element(other)

    def __add__(self, other) -> 'FieldElement':
        return self.field.element(self.rep + self._lift(other).rep)

    __radd__ = __add__

    def __sub__(self, other) -> 'FieldElement':
        return self.field.element(self.rep - self._lift(other).rep)

    def __rsub__(self, other) -> 'FieldElement':
        return self._lift(other) - self

    def __mul__(self, other) -> 'FieldElement':
        return self.field.element(self.rep * self._lift(other).rep)

    __rmul__ = __mul__

    def __neg__(self) -> 'FieldElement':
        return self.field.element(-self.rep)

    def __pow__(self, exponent: int) -> 'FieldElement':
        result = self.field.one()
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> 'FieldElement':
        if self.is_zero:
            raise NonInvertibleDenominator(f"Zero has no inverse in {self.field}")
        try:
            return self.field.element(self.rep.invert(self.field._modulus_poly()))
        except NotInvertible as e:
            raise NonInvertibleDenominator(f"{self} is not invertible in {self.field}") from e

    def __truediv__(self, other) -> 'FieldElement':
        return self * self._lift(other).inverse()

    @property
    def is_zero(self) -> bool:
        return self.rep.is_zero

    @property
    def is_rational(self) -> bool:
        return self.rep.degree() <= 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Rational)):
            other = self.field.element(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.rep == other.rep

    def __hash__(self) -> int:
        return hash((self.field.modulus, tuple(self.rep.all_coeffs())))

    def to_text(self) -> str:
        if self.rep.is_zero:
            return '0'
        return UniPoly.from_poly(self.rep, self.field.variable).to_text()

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"FieldElement('{self.to_text()}' in {self.field})"


# --- polynomials over a number field (coefficient lists, constant first) ------

def trim(coeffs: Sequence[FieldElement]) -> List[FieldElement]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1].is_zero:
        coeffs.pop()
    return coeffs


def _monic(coeffs: List[FieldElement]) -> List[FieldElement]:
    lead_inv = coeffs[-1].inverse()
    return [c * lead_inv for c in coeffs]


def _rem(a: List[FieldElement], b: List[FieldElement]) -> List[FieldElement]:
    a = list(a)
    lead_inv = b[-1].inverse()
    while len(a) >= len(b) and a:
        factor = a[-1] * lead_inv
        shift = len(a) - len(b)
        for i, coeff in enumerate(b):
            a[shift + i] = a[shift + i] - factor * coeff
        a = trim(a)
    return a


def poly_gcd(a: Sequence[FieldElement], b: Sequence[FieldElement]) -> List[FieldElement]:
    """Monic gcd over the field; the empty list stands for the zero polynomial."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, _rem(a, b)
    return _monic(a) if a else []


def root_of_linear(coeffs: Sequence[FieldElement]) -> FieldElement:
    """The root of a degree-one polynomial c0 + c1 x."""
    if len(coeffs) != 2:
        raise ValueError(f"Expected a linear polynomial, got degree {len(coeffs) - 1}")
    return -coeffs[0] / coeffs[1]


def rational_point(values: Dict[str, Rational], variable: str = 'a') -> Dict[str, FieldElement]:
    """Embed a rational point into the degree-one field QQ[x]/(x)."""
    field = NumberField(UniPoly(variable, (Rational(0), Rational(1))))
    return {name: field.element(value) for name, value in values.items()}


def minimal_polynomial(element: FieldElement, variable: str) -> UniPoly:
    """
    Minimal polynomial over QQ of a field element, in the given variable.

    The characteristic polynomial res_x(m(x), y - rep(x)) is a power of the
    minimal polynomial, so its squarefree part is the answer.
    """
    x = Dummy('x')
    y = symbol(variable)
    generator = element.field.modulus.symbol
    modulus = element.field.modulus.to_poly().as_expr().subs(generator, x)
    rep = element.rep.as_expr().subs(generator, x)
    charpoly = Poly(sympy_resultant(modulus, y - rep, x), y, domain=QQ)
    return UniPoly.from_poly(charpoly.sqf_part(), variable).primitive()
