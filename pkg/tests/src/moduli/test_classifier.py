"""
Tests for classifier module.
"""

import json
import unittest
import sys
from pathlib import Path
from unittest.mock import patch

from hypothesis import given, settings, strategies as st
from sympy import Rational, Symbol

# Add project root to path
project_root = Path(__file__).resolve().parent.parent.parent.parent
sys.path.insert(0, str(project_root))

from src.algebra.number_field import rational_point
from src.algebra.polynomial import MultiPoly, parse_poly
from src.incidence.table import read_table
from src.moduli.classifier import Verdict, check_degenerations, classify, root_from_values
from src.moduli.system import ConstraintSystem
from src.realization.realizer import gauge_inequations, realize

REGISTRY = project_root / 'registry'
GAUGE = [c.poly for c in gauge_inequations()]


def _system(*texts, inequations=GAUGE):
    return ConstraintSystem.make(('a', 'b'), [parse_poly(t) for t in texts], inequations)


class TestZeroDimensional(unittest.TestCase):
    """Test cases for finitely many points."""

    def test_two_real_points(self):
        """12.B.3.b.iii: 2a^2 - 1, two real points, flagged."""
        report = classify(_system('a*b - a - b', 'a^2*b - a^2 + a + 1'))
        self.assertEqual(report.verdict, Verdict.ZERO_DIM)
        self.assertEqual(report.minpoly, '2*a^2 - 1')
        self.assertEqual(report.eliminants['b'], 'b^2 + 2*b - 1')
        self.assertEqual((report.point_count, report.real_count, report.orbit_count), (2, 2, 2))
        self.assertTrue(report.zariski_flag)

    def test_conjugate_pair(self):
        """(9_3).ii.DFH: b^2 + 1, one conjugation orbit, not flagged."""
        report = classify(_system('a - (b^2 - b + 1)', 'b^2 + 1'))
        self.assertEqual(report.verdict, Verdict.ZERO_DIM)
        self.assertEqual(report.minpoly, 'b^2 + 1')
        self.assertEqual(report.eliminants['a'], 'a^2 + 1')
        self.assertEqual((report.point_count, report.real_count, report.orbit_count), (2, 0, 1))
        self.assertFalse(report.zariski_flag)
        self.assertEqual(report.irreducible, 'Irreducible')

    def test_one_real_one_pair(self):
        """(9_3).ii.DFI: a cubic with one real root gives two orbits."""
        report = classify(_system('a - (b^2 - b + 1)', 'b^3 - 2*b^2 + b - 1'))
        self.assertEqual((report.point_count, report.real_count, report.orbit_count), (3, 1, 2))
        self.assertTrue(report.zariski_flag)

    def test_single_rational_point(self):
        """(9_3).ii.DFA: b = 2 and a = 3."""
        report = classify(_system('a - (b^2 - b + 1)', 'b - 2'))
        self.assertEqual(report.verdict, Verdict.ZERO_DIM)
        self.assertEqual(report.minpoly, 'b - 2')
        self.assertEqual(report.eliminants, {'a': 'a - 3', 'b': 'b - 2'})
        self.assertEqual(report.orbit_count, 1)

    def test_field_extension(self):
        """a^2 = 2, b^2 = 3 needs the degree-four field QQ(sqrt 2, sqrt 3)."""
        report = classify(_system('a^2 - 2', 'b^2 - 3'))
        self.assertEqual((report.point_count, report.real_count, report.orbit_count), (4, 4, 4))
        self.assertEqual(report.eliminants, {'a': 'a^2 - 2', 'b': 'b^2 - 3'})
        self.assertEqual(len(report.roots), 1)

    def test_degenerate_root_removed(self):
        """The root b = 1 of (b - 1)(b - 2) lies on a grid inequation."""
        report = classify(_system('a - 2', 'b^2 - 3*b + 2'))
        self.assertEqual(report.minpoly, 'b - 2')
        self.assertTrue(any('b - 1' in entry for entry in report.degeneracy_log))

    def test_to_dict(self):
        """Stable field names for structured output."""
        data = classify(_system('a - (b^2 - b + 1)', 'b^2 + 1')).to_dict()
        for name in ('verdict', 'minpoly', 'real_count', 'orbit_count', 'zariski_flag', 'degeneracy_log'):
            self.assertIn(name, data)
        self.assertEqual(data['verdict'], 'ZeroDim')


class TestEmptyAndPositive(unittest.TestCase):
    """Test cases for empty and positive-dimensional moduli spaces."""

    def test_contradiction(self):
        """(9_10).degenerate: a - b - 1 and a + b - 1 are contradictory."""
        report = classify(_system('a - b - 1', 'a + b - 1'))
        self.assertEqual(report.verdict, Verdict.EMPTY)
        self.assertFalse(report.zariski_flag)
        self.assertTrue(report.degeneracy_log)

    def test_unconstrained(self):
        """No constraints: the whole plane, irreducible."""
        report = classify(_system())
        self.assertEqual(report.verdict, Verdict.POSITIVE_DIM)
        self.assertEqual(report.dimension, 2)
        self.assertEqual(report.irreducible, 'Irreducible')

    def test_plane_curve(self):
        """11.B.3.a.i is an irreducible curve."""
        table = read_table(REGISTRY / '11.B.3.a.i.cfg')
        state = realize(table, (('L1', 'L2', 'L4'), ('L3', 'L10', 'L9')))
        report = classify(ConstraintSystem.from_state(state))
        self.assertEqual(report.verdict, Verdict.POSITIVE_DIM)
        self.assertEqual(report.dimension, 1)
        self.assertEqual(report.irreducible, 'Irreducible')
        self.assertFalse(report.zariski_flag)
        self.assertFalse(report.caveat)

    def test_conjugate_components(self):
        """a^2 + b^2 splits over C into conjugate lines: reducible, not flagged."""
        report = classify(_system('a^2 + b^2'))
        self.assertEqual(report.irreducible, 'Reducible')
        self.assertIs(report.conjugate_exchanged, True)
        self.assertFalse(report.zariski_flag)
        self.assertTrue(report.caveat)
        self.assertTrue(json.loads(json.dumps(report.to_dict()))['conjugate_exchanged'])

    def test_real_components(self):
        """a^2 - 2b^2 splits into two real lines: flagged."""
        report = classify(_system('a^2 - 2*b^2'))
        self.assertEqual(report.irreducible, 'Reducible')
        self.assertIs(report.conjugate_exchanged, False)
        self.assertTrue(report.zariski_flag)

    def test_family_over_a_root(self):
        """b is free over both roots of a^2 - 2, so the space is a family, not two points."""
        branch = _system('a^2 - 2', '(a^2 - 2)*b')
        self.assertEqual(branch.dimension, 0)
        with patch('src.moduli.classifier.triangularize', return_value=[branch]):
            report = classify(branch)
        self.assertEqual(report.verdict, Verdict.POSITIVE_DIM)
        self.assertEqual(report.dimension, 1)
        self.assertEqual(report.irreducible, 'Unknown')
        self.assertTrue(report.caveat)
        self.assertFalse(report.zariski_flag)
        self.assertEqual(report.point_count, 0)
        self.assertTrue(any('vanishes identically' in entry for entry in report.degeneracy_log))
        self.assertTrue(any('positive-dimensional component' in entry for entry in report.degeneracy_log))


class TestCheckDegenerations(unittest.TestCase):
    """Test cases for root verification against the arrangement."""

    def test_dfh_roots_are_valid(self):
        """(9_3).ii.DFH at b^2 + 1 = 0 introduces no extra coincidence."""
        table = read_table(REGISTRY / '9_3.ii.DFH.cfg')
        state = realize(table, (('L3', 'L2', 'L1'), ('L4', 'L5', 'L6')))
        report = classify(ConstraintSystem.from_state(state))
        self.assertEqual(report.verdict, Verdict.ZERO_DIM)
        self.assertEqual(report.minpoly, 'b^2 + 1')
        self.assertEqual(len(report.roots), 1)
        self.assertEqual(check_degenerations(state, table, report.roots[0]), [])

    def test_adg_at_a_equal_one(self):
        """(9_3).iii.ADG at a = 1 breaks the grid."""
        table = read_table(REGISTRY / '9_3.iii.ADG.cfg')
        state = realize(table, (('L1', 'L2', 'L3'), ('L4', 'L5', 'L6')))
        values = {name: Rational(2) for name in state.params}
        values.update(a=Rational(1), b=Rational(0))
        root = root_from_values(rational_point(values))
        violations = check_degenerations(state, table, root)
        self.assertIn('grid: a = 1', violations)
        self.assertIn('grid: b = 0', violations)


def _swap(p: MultiPoly) -> MultiPoly:
    a, b = Symbol('a'), Symbol('b')
    return MultiPoly.from_expr(p.as_expr().subs({a: b, b: a}, simultaneous=True))


_coefficients = st.lists(st.integers(-3, 3), min_size=6, max_size=6)


def _conic(coeffs) -> MultiPoly:
    monomials = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    return MultiPoly.from_terms({(i, j, 0, 0): c for (i, j), c in zip(monomials, coeffs) if c})


class TestEliminationProperty(unittest.TestCase):
    """Both elimination orders see the same common roots."""

    @settings(max_examples=50, deadline=None)
    @given(_coefficients, _coefficients)
    def test_orders_agree(self, first, second):
        """Classifying a pair of conics and its mirror image agree."""
        f, g = _conic(first), _conic(second)
        report = classify(ConstraintSystem.make(('a', 'b'), [f, g], []))
        mirrored = classify(ConstraintSystem.make(('a', 'b'), [_swap(f), _swap(g)], []))
        self.assertEqual(report.verdict, mirrored.verdict)
        if report.verdict is Verdict.ZERO_DIM:
            self.assertEqual(report.point_count, mirrored.point_count)
            self.assertEqual(report.real_count, mirrored.real_count)
            for root in report.roots:
                for p in (f, g):
                    self.assertTrue(root.field.evaluate(p, root.coordinates).is_zero)
        if report.verdict is Verdict.POSITIVE_DIM:
            self.assertEqual(report.dimension, mirrored.dimension)


if __name__ == '__main__':
    unittest.main()
