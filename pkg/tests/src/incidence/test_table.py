"""
Tests for table module.
"""

import unittest
import sys
import tempfile
from pathlib import Path

# Add project root to path
project_root = Path(__file__).resolve().parent.parent.parent.parent
sys.path.insert(0, str(project_root))

from src.incidence.errors import DuplicateIncidence, ParseError
from src.incidence.table import (
    ConfigTable,
    doubles,
    format_table,
    parse_table,
    read_table,
    relabel,
)

REGISTRY = project_root / 'registry'


class TestParseTable(unittest.TestCase):
    """Test cases for reading the registry format."""

    def setUp(self):
        """Set up a small table text."""
        self.text = (
            "# three lines through one point\n"
            "lines: 3 triples: 1\n"
            "L1: p\n"
            "L2: p   # trailing comment\n"
            "L3: p\n"
        )

    def test_parse_small_table(self):
        """Comments are skipped and labels interned."""
        table = parse_table(self.text, name='pencil')
        self.assertEqual(table.k, 3)
        self.assertEqual(table.n3, 1)
        self.assertEqual(table.lines, ((0,), (0,), (0,)))
        self.assertEqual(table.point_labels, ('p',))
        self.assertEqual(table.name, 'pencil')

    def test_registry_nine_three(self):
        """(9_3).i has nine columns of size three."""
        table = read_table(REGISTRY / '9_3.i.cfg')
        self.assertEqual(table.name, '(9_3).i')
        self.assertEqual(table.k, 9)
        self.assertEqual(table.n3, 9)
        self.assertTrue(all(len(points) == 3 for points in table.lines))

    def test_natural_label_order(self):
        """e10 sorts after e9 when labels are interned."""
        table = read_table(REGISTRY / '13.i.cfg')
        self.assertEqual(table.point_labels, tuple(f"e{j}" for j in range(1, 14)))
        self.assertEqual(table.line_labels[-1], 'L10')

    def test_empty_text(self):
        """An empty file is rejected at line 1, column 1."""
        with self.assertRaises(ParseError) as ctx:
            parse_table('')
        self.assertEqual((ctx.exception.line, ctx.exception.column), (1, 1))

    def test_comments_only(self):
        """A file with only comments has no header."""
        with self.assertRaises(ParseError):
            parse_table('# nothing here\n\n')

    def test_bad_header(self):
        """The header must name both counts."""
        with self.assertRaises(ParseError) as ctx:
            parse_table('lines 3\nL1: p\n')
        self.assertEqual(ctx.exception.line, 1)

    def test_bad_row(self):
        """Rows must start with a line label."""
        with self.assertRaises(ParseError) as ctx:
            parse_table('lines: 1 triples: 1\nX1: p\n')
        self.assertEqual(ctx.exception.line, 2)

    def test_bad_token_column(self):
        """The column of an invalid label is reported."""
        with self.assertRaises(ParseError) as ctx:
            parse_table('lines: 1 triples: 2\nL1: e1 e$2\n')
        self.assertEqual((ctx.exception.line, ctx.exception.column), (2, 8))
        self.assertIn('e$2', str(ctx.exception))

    def test_duplicate_incidence(self):
        """A column listing e1 twice is rejected."""
        with self.assertRaises(DuplicateIncidence):
            parse_table('lines: 1 triples: 1\nL1: e1 e1\n')

    def test_line_listed_twice(self):
        """Two rows for the same line are rejected."""
        with self.assertRaises(ParseError):
            parse_table('lines: 2 triples: 1\nL1: e1\nL1: e1\n')

    def test_header_disagreement(self):
        """Row and label counts must match the header."""
        with self.assertRaises(ParseError) as ctx:
            parse_table('# header on line two\nlines: 2 triples: 1\nL1: e1\n')
        self.assertEqual(ctx.exception.line, 2)
        with self.assertRaises(ParseError):
            parse_table('lines: 1 triples: 2\nL1: e1\n')


class TestFormatTable(unittest.TestCase):
    """Test cases for writing tables."""

    def setUp(self):
        """Set up a table with opaque labels."""
        self.table = parse_table('lines: 3 triples: 2\nL1: q p\nL2: p\nL3: q\n', name='opaque')

    def test_dense_labels(self):
        """Output uses sorted dense labels e1.. and keeps the name."""
        text = format_table(self.table, comments={1: 'second'})
        self.assertEqual(
            text,
            "# name: opaque\nlines: 3 triples: 2\nL1: e1 e2\nL2: e1  # second\nL3: e2\n",
        )

    def test_written_file_reads_back(self):
        """A formatted registry table reads back with the same incidences and name."""
        table = read_table(REGISTRY / '12.B.3.b.iii.cfg')
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'copy.cfg'
            path.write_text(format_table(table), encoding='utf-8')
            again = read_table(path)
        self.assertEqual(again.lines, table.lines)
        self.assertEqual(again.name, '12.B.3.b.iii')


class TestConfigTable(unittest.TestCase):
    """Test cases for table accessors and relabeling."""

    def setUp(self):
        """Set up the Ceva arrangement from its blocks."""
        self.ceva = ConfigTable.from_blocks(6, [(0, 1, 2), (0, 3, 4), (1, 3, 5), (2, 4, 5)], name='Ceva')

    def test_from_blocks(self):
        """Every Ceva line carries two triples."""
        self.assertEqual(self.ceva.k, 6)
        self.assertEqual(self.ceva.n3, 4)
        self.assertEqual([self.ceva.degree(i) for i in range(6)], [2] * 6)
        self.assertEqual(self.ceva.point_lines[0], (0, 1, 2))

    def test_meet_and_doubles(self):
        """Lines 0 and 5 meet in the only double points of Ceva."""
        self.assertEqual(self.ceva.meet(0, 1), 0)
        self.assertIsNone(self.ceva.meet(0, 5))
        self.assertEqual(doubles(self.ceva), [(0, 5), (1, 4), (2, 3)])

    def test_doubles_of_thirteen(self):
        """13.i has 45 - 39 = 6 doubles."""
        self.assertEqual(len(doubles(read_table(REGISTRY / '13.i.cfg'))), 6)

    def test_line_index(self):
        """Labels and indices resolve to the same line."""
        self.assertEqual(self.ceva.line_index('L3'), 2)
        self.assertEqual(self.ceva.line_index(4), 4)
        with self.assertRaises(ValueError):
            self.ceva.line_index('L9')

    def test_relabel(self):
        """Relabeling moves incidences with the permutation."""
        moved = relabel(self.ceva, [5, 4, 3, 2, 1, 0], [0, 1, 2, 3])
        self.assertEqual(moved.point_lines[0], (3, 4, 5))
        self.assertEqual(moved.name, 'Ceva')

    def test_relabel_rejects_non_permutation(self):
        """Relabel needs genuine permutations."""
        with self.assertRaises(ValueError):
            relabel(self.ceva, [0, 0, 1, 2, 3, 4], [0, 1, 2, 3])


if __name__ == '__main__':
    unittest.main()
