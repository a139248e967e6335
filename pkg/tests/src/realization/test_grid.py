"""
Tests for grid module.
"""

import unittest
import sys
from pathlib import Path

# Add project root to path
project_root = Path(__file__).resolve().parent.parent.parent.parent
sys.path.insert(0, str(project_root))

from src.incidence.table import ConfigTable, read_table
from src.realization.errors import NoGrid
from src.realization.grid import GridChoice, find_grid

REGISTRY = project_root / 'registry'


class TestFindGrid(unittest.TestCase):
    """Test cases for the grid choice."""

    def test_nine_three_ii(self):
        """(9_3).ii takes the pencils through e1 and e8."""
        table = read_table(REGISTRY / '9_3.ii.cfg')
        choice = find_grid(table)
        self.assertEqual(table.point_labels[choice.y_point], 'e1')
        self.assertEqual(table.point_labels[choice.x_point], 'e8')
        self.assertEqual(choice.y_lines, (0, 1, 2))
        self.assertEqual(choice.x_lines, (3, 4, 5))

    def test_desargues(self):
        """Desargues takes the pencils through e1 and e8."""
        table = read_table(REGISTRY / '10_3.i.cfg')
        choice = find_grid(table)
        self.assertEqual(table.point_labels[choice.y_point], 'e1')
        self.assertEqual(table.point_labels[choice.x_point], 'e8')

    def test_pencils_are_disjoint(self):
        """Every registry table has a grid whose pencils share no line."""
        for path in sorted(REGISTRY.glob('*.cfg')):
            table = read_table(path)
            with self.subTest(table=table.name):
                choice = find_grid(table)
                self.assertEqual(len(set(choice.lines)), 6)
                for i in choice.y_lines:
                    self.assertTrue(table.is_incident(i, choice.y_point))
                for i in choice.x_lines:
                    self.assertTrue(table.is_incident(i, choice.x_point))

    def test_three_lines(self):
        """A single pencil has no grid."""
        table = ConfigTable.from_lines([(0,), (0,), (0,)], name='pencil')
        with self.assertRaises(NoGrid):
            find_grid(table)


class TestGridHint(unittest.TestCase):
    """Test cases for caller-supplied grids."""

    def setUp(self):
        """Set up (9_3).ii."""
        self.table = read_table(REGISTRY / '9_3.ii.cfg')

    def test_hint_keeps_order(self):
        """Hint order is the order y=0, y=z, y=bz."""
        choice = find_grid(self.table, (('L3', 'L2', 'L1'), ('L4', 'L5', 'L6')))
        self.assertEqual(choice, GridChoice(y_lines=(2, 1, 0), x_lines=(3, 4, 5), y_point=0, x_point=7))
        self.assertEqual(choice.describe(self.table), 'y=0,z,bz: L3,L2,L1; x=0,z,az: L4,L5,L6')

    def test_hint_not_concurrent(self):
        """Three lines without a common triple are rejected."""
        with self.assertRaises(NoGrid):
            find_grid(self.table, (('L1', 'L2', 'L4'), ('L5', 'L6', 'L7')))

    def test_hint_repeats_line(self):
        """A line in both pencils is rejected."""
        with self.assertRaises(NoGrid):
            find_grid(self.table, (('L1', 'L2', 'L3'), ('L1', 'L5', 'L6')))

    def test_hint_unknown_line(self):
        """Unknown labels are reported as NoGrid."""
        with self.assertRaises(NoGrid):
            find_grid(self.table, (('L1', 'L2', 'L3'), ('L4', 'L5', 'L42')))

    def test_hint_by_index(self):
        """Indices work as well as labels."""
        choice = find_grid(self.table, ((0, 1, 2), (3, 4, 5)))
        self.assertEqual(choice.y_point, 0)


if __name__ == '__main__':
    unittest.main()
