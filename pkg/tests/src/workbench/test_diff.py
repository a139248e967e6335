"""
Tests for diff module.
"""

import unittest
import sys
from pathlib import Path

# Add project root to path
project_root = Path(__file__).resolve().parent.parent.parent.parent
sys.path.insert(0, str(project_root))

from src.algebra.polynomial import parse_poly
from src.incidence.table import read_table
from src.moduli.classifier import ModuliReport, Verdict, classify
from src.moduli.system import ConstraintSystem
from src.realization.realizer import gauge_inequations
from src.workbench.diff import compare_solution_sets, diff_expected
from src.workbench.registry import RegistryEntry, normalize_expected

REGISTRY = project_root / 'registry'
GAUGE = [c.poly for c in gauge_inequations()]
GRID = {'y': ['L3', 'L2', 'L1'], 'x': ['L4', 'L5', 'L6']}


def _system(*texts):
    return ConstraintSystem.make(('a', 'b'), [parse_poly(t) for t in texts], GAUGE)


def _entry(name, stem, **expected):
    path = REGISTRY / f'{stem}.cfg'
    return RegistryEntry(name=name, table=read_table(path), path=path, expected=normalize_expected(name, expected))


class TestFiniteSolutionSets(unittest.TestCase):
    """Test cases for arrangements with finitely many realizations."""

    def setUp(self):
        """Set up (9_3).ii.CFI."""
        self.system = _system('a - b^2 + b - 1', 'b^2 - b - 1')
        self.report = classify(self.system)
        self.expected = {
            'geometric': True,
            'zariski': True,
            'verdict': 'ZeroDim',
            'grid': GRID,
            'constraints': ['a - b^2 + b - 1', 'b^2 - b - 1'],
            'eliminant': {'var': 'b', 'poly': 'b^2 - b - 1'},
        }

    def test_match(self):
        """The golden data of (9_3).ii.CFI agrees."""
        entry = _entry('(9_3).ii.CFI', '9_3.ii.CFI', **self.expected)
        self.assertEqual(diff_expected(self.report, entry, self.system), [])

    def test_tampered_eliminant(self):
        """A sign change in the eliminant is exactly one mismatch."""
        self.expected['eliminant'] = {'var': 'b', 'poly': 'b^2 + b - 1'}
        entry = _entry('(9_3).ii.CFI', '9_3.ii.CFI', **self.expected)
        mismatches = diff_expected(self.report, entry, self.system)
        self.assertEqual(len(mismatches), 1)
        self.assertIn('eliminant', mismatches[0])

    def test_tampered_flag(self):
        """A wrong Zariski flag is reported by name."""
        self.expected['zariski'] = False
        entry = _entry('(9_3).ii.CFI', '9_3.ii.CFI', **self.expected)
        self.assertEqual(diff_expected(self.report, entry, self.system), ['zariski: expected False, got True'])

    def test_eliminant_without_grid(self):
        """Without a gauge the eliminant matches in any variable."""
        del self.expected['grid']
        del self.expected['constraints']
        self.expected['eliminant'] = {'var': 'a', 'poly': 'a^2 - a - 1'}
        entry = _entry('(9_3).ii.CFI', '9_3.ii.CFI', **self.expected)
        self.assertEqual(diff_expected(self.report, entry, self.system), [])

    def test_cubic_field(self):
        """12.B.2.iv: one real point and a conjugate pair."""
        system = _system('a - b', 'a^3 - 2*a^2 + 3*a - 1')
        entry = _entry(
            '12.B.2.iv', '12.B.2.iv',
            geometric=True, zariski=True, verdict='ZeroDim',
            grid={'y': ['L4', 'L7', 'L6'], 'x': ['L5', 'L9', 'L10']},
            constraints=['a - b', 'a^3 - 2*a^2 + 3*a - 1'],
            eliminant={'var': 'a', 'poly': 'a^3 - 2*a^2 + 3*a - 1'},
        )
        self.assertEqual(diff_expected(classify(system), entry, system), [])

    def test_different_roots(self):
        """Published constraints with other roots fail both directions."""
        mismatches = compare_solution_sets(self.report, self.system, ['a - b^2 + b - 1', 'b^2 + 1'])
        self.assertTrue(mismatches)
        self.assertTrue(any('published constraint' in m for m in mismatches))
        self.assertTrue(any('measured constraint' in m for m in mismatches))

    def test_eliminant_without_finite_set(self):
        """An expected eliminant against a family is a mismatch."""
        system = _system('a*b - a - b')
        entry = _entry('(9_3).i.CFH', '9_3.i.CFH', eliminant={'var': 'a', 'poly': 'a - 2'})
        mismatches = diff_expected(classify(system), entry, system)
        self.assertEqual(len(mismatches), 1)
        self.assertIn('no finite solution set', mismatches[0])


class TestFamilies(unittest.TestCase):
    """Test cases for positive-dimensional solution sets."""

    def test_same_curve(self):
        """A scalar multiple of the measured constraint agrees."""
        system = _system('2*a*b - 2*a - 2*b')
        report = classify(system)
        self.assertEqual(compare_solution_sets(report, system, ['a*b - a - b']), [])

    def test_different_curve(self):
        """A different curve is reported."""
        system = _system('a*b - a - b')
        report = classify(system)
        mismatches = compare_solution_sets(report, system, ['a*b - a + b'])
        self.assertTrue(mismatches)

    def test_dimension_disagreement(self):
        """A point against a curve is a dimension mismatch."""
        system = _system('a - b')
        report = classify(system)
        mismatches = compare_solution_sets(report, system, ['a - b', 'b - 2'])
        self.assertEqual(len(mismatches), 1)
        self.assertIn('dimension', mismatches[0])

    def test_foreign_parameter(self):
        """Constraints in a parameter the realization lacks cannot agree."""
        system = _system('a - b')
        mismatches = compare_solution_sets(classify(system), system, ['c - 1'])
        self.assertEqual(len(mismatches), 1)
        self.assertIn('c', mismatches[0])

    def test_pappus_entry(self):
        """Verdict, dimension and constraint list of Pappus agree."""
        system = _system('a - b')
        entry = _entry(
            'Pappus', 'Pappus',
            geometric=True, zariski=False, verdict='PositiveDim', dimension=1,
            grid={'y': ['L1', 'L2', 'L3'], 'x': ['L4', 'L5', 'L6']},
            constraints=['a - b'],
        )
        self.assertEqual(diff_expected(classify(system), entry, system), [])

    def test_empty_skips_constraints(self):
        """An empty moduli space is compared on its verdict only."""
        report = ModuliReport(verdict=Verdict.EMPTY)
        entry = _entry('13.i', '13.i', geometric=False, zariski=False, verdict='Empty', dimension=1)
        self.assertEqual(diff_expected(report, entry, None), [])

    def test_no_expected_data(self):
        """Entries without expected data never mismatch."""
        path = REGISTRY / 'Pappus.cfg'
        entry = RegistryEntry(name='Pappus', table=read_table(path), path=path)
        self.assertEqual(diff_expected(ModuliReport(verdict=Verdict.EMPTY), entry), [])


if __name__ == '__main__':
    unittest.main()
