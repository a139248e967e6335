"""
Tests for polynomial module.
"""

import unittest
import sys
from pathlib import Path

from sympy import Rational
from hypothesis import given, settings, strategies as st

# Add project root to path
project_root = Path(__file__).resolve().parent.parent.parent.parent
sys.path.insert(0, str(project_root))

from src.algebra.errors import PolynomialSyntaxError
from src.algebra.polynomial import (
    MultiPoly,
    RationalFunction,
    UniPoly,
    canonical_texts,
    parse_poly,
)


small_ints = st.integers(min_value=-4, max_value=4)


@st.composite
def small_polys(draw, names=('a', 'b'), max_degree=2):
    """Random polynomials with small integer coefficients."""
    a, b = MultiPoly.variable(names[0]), MultiPoly.variable(names[1])
    result = MultiPoly.zero()
    for i in range(max_degree + 1):
        for j in range(max_degree + 1 - i):
            result = result + draw(small_ints) * a ** i * b ** j
    return result


class TestMultiPoly(unittest.TestCase):
    """Test cases for MultiPoly."""

    def setUp(self):
        """Set up the parameters."""
        self.a = MultiPoly.variable('a')
        self.b = MultiPoly.variable('b')
        self.c = MultiPoly.variable('c')

    def test_canonical_text_example(self):
        """Terms print in graded lexicographic order with explicit operators."""
        a, b = self.a, self.b
        p = a ** 2 * b ** 2 - 2 * a ** 2 * b + a ** 2 - a * b - b ** 2 + b
        self.assertEqual(p.to_text(), 'a^2*b^2 - 2*a^2*b + a^2 - a*b - b^2 + b')

    def test_text_of_constants_and_fractions(self):
        """Constants and rational coefficients print plainly."""
        self.assertEqual(MultiPoly.zero().to_text(), '0')
        self.assertEqual(MultiPoly.constant(-3).to_text(), '-3')
        self.assertEqual((Rational(1, 2) * self.a - 1).to_text(), '1/2*a - 1')

    def test_normalized_is_primitive_with_positive_lead(self):
        """Normalization clears denominators, content and sign."""
        p = Rational(-1, 2) * self.a + Rational(3, 4) * self.b
        self.assertEqual(p.normalized().to_text(), '2*a - 3*b')
        q = -(self.a - self.b ** 2 + self.b - 1)
        self.assertEqual(q.normalized().to_text(), 'b^2 - a - b + 1')

    def test_normalized_idempotent(self):
        """Normalizing twice changes nothing."""
        p = 6 * self.a * self.b - 4 * self.c
        self.assertEqual(p.normalized(), p.normalized().normalized())

    def test_structural_equality_ignores_construction(self):
        """Equal polynomials compare and hash equal."""
        p = (self.a + 1) * (self.a - 1)
        q = self.a ** 2 - 1
        self.assertEqual(p, q)
        self.assertEqual(hash(p), hash(q))
        self.assertEqual(len({p, q}), 1)

    def test_variables_and_degrees(self):
        """Occurring parameters and per-variable degrees."""
        p = self.a ** 2 * self.c + self.c
        self.assertEqual(p.variables, ('a', 'c'))
        self.assertEqual(p.degree('a'), 2)
        self.assertEqual(p.degree('b'), 0)
        self.assertEqual(MultiPoly.zero().degree('a'), -1)
        self.assertEqual(p.total_degree(), 3)

    def test_coefficients_in(self):
        """Coefficients as a polynomial in one variable."""
        p = self.a ** 2 * self.b - self.a + self.b
        coeffs = p.coefficients_in('a')
        self.assertEqual(coeffs, [self.b, MultiPoly.constant(-1), self.b])

    def test_substitute(self):
        """Substituting b = a in a - b gives zero."""
        self.assertTrue((self.a - self.b).substitute('b', self.a).is_zero)
        p = self.b ** 2 + 1
        self.assertEqual(p.substitute('b', self.a + 1), self.a ** 2 + 2 * self.a + 2)

    def test_evaluate(self):
        """Exact evaluation at rational points."""
        p = 2 * self.a ** 2 - 1
        self.assertEqual(p.evaluate({'a': Rational(1, 2)}), Rational(-1, 2))
        with self.assertRaises(ValueError):
            p.evaluate({'b': 1})

    def test_factor(self):
        """Factorization over QQ returns normalized factors."""
        p = self.b ** 2 - 1
        factors = p.factor()
        self.assertEqual([f.to_text() for f, _ in factors], ['b + 1', 'b - 1'])
        self.assertEqual(((self.a - 1) ** 2).factor(), [(self.a - 1, 2)])

    def test_divides(self):
        """Exact divisibility."""
        self.assertTrue((self.a - 1).divides(self.a ** 2 - 1))
        self.assertFalse((self.a - 2).divides(self.a ** 2 - 1))

    @given(small_polys(), small_polys())
    @settings(max_examples=50, deadline=None)
    def test_ring_axioms(self, p, q):
        """Distributivity and commutativity hold exactly."""
        r = self.a - self.b
        self.assertEqual(p * (q + r), p * q + p * r)
        self.assertEqual(p * q, q * p)


class TestParsePoly(unittest.TestCase):
    """Test cases for parse_poly."""

    def test_parses_canonical_text(self):
        """Canonical text round-trips."""
        text = 'a^2*b^2 - 2*a^2*b + a^2 - a*b - b^2 + b'
        self.assertEqual(parse_poly(text).to_text(), text)

    def test_accepts_implicit_forms(self):
        """Implicit multiplication and ** are accepted."""
        self.assertEqual(parse_poly('2a^2 - 1'), parse_poly('2*a**2 - 1'))
        self.assertEqual(parse_poly('a - (b^2 - b + 1)').to_text(), '-b^2 + a + b - 1')

    def test_rejects_bad_text(self):
        """Empty text, stray symbols and non-polynomials fail."""
        for text in ('', '   ', 'a + x', '1/a', 'a +* b'):
            with self.subTest(text=text):
                with self.assertRaises(PolynomialSyntaxError):
                    parse_poly(text)

    def test_canonical_texts_sorted_and_deduplicated(self):
        """Constraint lists print normalized, deduplicated and sorted."""
        polys = [parse_poly('b^2 + 1'), parse_poly('-a + b^2 - b + 1'), parse_poly('2*b^2 + 2')]
        self.assertEqual(canonical_texts(polys), ['b^2 + 1', 'b^2 - a - b + 1'])


class TestRationalFunction(unittest.TestCase):
    """Test cases for RationalFunction."""

    def setUp(self):
        """Set up the parameters."""
        self.a = MultiPoly.variable('a')
        self.b = MultiPoly.variable('b')

    def test_lowest_terms(self):
        """Common factors cancel and the denominator becomes monic."""
        f = RationalFunction.make(self.a ** 2 - 1, 2 * self.a - 2)
        self.assertEqual(f.num, Rational(1, 2) * self.a + Rational(1, 2))
        self.assertEqual(f.den, MultiPoly.one())
        self.assertTrue(f.is_polynomial)

    def test_inverse_product_is_one(self):
        """(x/y) * (y/x) = 1."""
        x = self.a * self.b - 1
        y = self.a + self.b
        f = RationalFunction.make(x, y) * RationalFunction.make(y, x)
        self.assertEqual(f, RationalFunction.make(1))

    def test_normalization_idempotent(self):
        """Re-normalizing a normalized function is the identity."""
        f = RationalFunction.make(3 * self.a, 6 * self.b - 6)
        self.assertEqual(RationalFunction.make(f.num, f.den), f)

    def test_zero_denominator(self):
        """A zero denominator is rejected."""
        with self.assertRaises(ZeroDivisionError):
            RationalFunction.make(self.a, 0)

    def test_arithmetic(self):
        """1/a + 1/b = (a + b)/(a*b)."""
        f = RationalFunction.make(1, self.a) + RationalFunction.make(1, self.b)
        self.assertEqual(f, RationalFunction.make(self.a + self.b, self.a * self.b))
        self.assertEqual(f.evaluate({'a': 1, 'b': 2}), Rational(3, 2))

    @given(small_polys(), small_polys())
    @settings(max_examples=40, deadline=None)
    def test_quotient_cancels(self, x, y):
        """(x/y) * (y/x) = 1 for random nonzero x, y."""
        if x.is_zero or y.is_zero:
            return
        f = RationalFunction.make(x, y) * RationalFunction.make(y, x)
        self.assertEqual(f, RationalFunction.make(1))


class TestUniPoly(unittest.TestCase):
    """Test cases for UniPoly."""

    def test_trailing_zeros_removed(self):
        """The leading coefficient is nonzero."""
        p = UniPoly('b', (1, 2, 0, 0))
        self.assertEqual(p.degree(), 1)
        self.assertEqual(UniPoly('b', (0, 0)).is_zero, True)

    def test_conversions(self):
        """Univariate views agree with the multivariate polynomial."""
        p = UniPoly.parse('2*a^2 - 1')
        self.assertEqual(p.variable, 'a')
        self.assertEqual(p.coefficients, (Rational(-1), Rational(0), Rational(2)))
        self.assertEqual(p.to_text(), '2*a^2 - 1')
        self.assertEqual(p(Rational(1, 2)), Rational(-1, 2))

    def test_rejects_multivariate(self):
        """Two parameters cannot form a UniPoly."""
        with self.assertRaises(ValueError):
            UniPoly.parse('a - b')


if __name__ == '__main__':
    unittest.main()
