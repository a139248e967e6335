"""
Tests for cli module.
"""

import io
import json
import os
import re
import shutil
import tempfile
import unittest
import sys
from contextlib import redirect_stdout
from pathlib import Path
from unittest.mock import patch

import yaml

# Add project root to path
project_root = Path(__file__).resolve().parent.parent.parent.parent
sys.path.insert(0, str(project_root))

from src.workbench.cli import main, parse_grid
from src.workbench.pipeline import EXIT_CLEAN, EXIT_FAILURE, EXIT_MISMATCH

REGISTRY = project_root / 'registry'


def _run(*argv):
    out = io.StringIO()
    with patch.dict(os.environ, {}, clear=True), redirect_stdout(out):
        code = main(['--log-level', 'ERROR', *argv])
    return code, out.getvalue()


class TestParseGrid(unittest.TestCase):
    """Test cases for the --grid argument."""

    def test_parse(self):
        """Semicolon separates the y-lines from the x-lines."""
        self.assertEqual(parse_grid('L1,L2,L3;L4, L5,L6'), (('L1', 'L2', 'L3'), ('L4', 'L5', 'L6')))

    def test_missing_separator(self):
        """A grid without ';' is a usage error."""
        with redirect_stdout(io.StringIO()), self.assertRaises(SystemExit) as ctx:
            main(['realize', 'Pappus', '--grid', 'L1,L2,L3'])
        self.assertEqual(ctx.exception.code, 2)


class TestCommands(unittest.TestCase):
    """Test cases for the subcommands."""

    def setUp(self):
        """Set up a scratch directory."""
        self.temp_dir = Path(tempfile.mkdtemp())

    def tearDown(self):
        """Clean up test fixtures."""
        shutil.rmtree(self.temp_dir)

    def test_validate_by_name(self):
        """A registry name resolves to its table."""
        code, out = _run('validate', '13.i')
        self.assertEqual(code, EXIT_CLEAN)
        data = json.loads(out)
        self.assertTrue(data['valid'])
        self.assertEqual(data['census']['n3'], 13)

    def test_validate_path(self):
        """A path is read directly."""
        code, out = _run('--format', 'text', 'validate', str(REGISTRY / '10_3.i.cfg'))
        self.assertEqual(code, EXIT_CLEAN)
        self.assertEqual(yaml.safe_load(out)['census']['n2'], 15)

    def test_validate_invalid(self):
        """A table failing the axioms exits with 3."""
        path = self.temp_dir / 'bad.cfg'
        path.write_text('lines: 3 triples: 2\nL1: e1 e2\nL2: e1\nL3: e1 e2\n', encoding='utf-8')
        code, _ = _run('validate', str(path))
        self.assertEqual(code, EXIT_FAILURE)

    def test_unknown_name(self):
        """A name that is neither a file nor in the registry exits with 3."""
        code, _ = _run('validate', 'no-such-arrangement')
        self.assertEqual(code, EXIT_FAILURE)

    def test_canon(self):
        """Relabeled copies share a digest."""
        text = (REGISTRY / 'Pappus.cfg').read_text(encoding='utf-8')
        relabeled = self.temp_dir / 'relabeled.cfg'
        relabeled.write_text(re.sub(r'\be(\d+)\b', lambda m: f'p{11 - int(m.group(1))}', text), encoding='utf-8')
        _, first = _run('canon', 'Pappus')
        code, second = _run('canon', str(relabeled))
        self.assertEqual(code, EXIT_CLEAN)
        self.assertEqual(json.loads(first)['digest'], json.loads(second)['digest'])

    def test_realize(self):
        """Pappus realizes with the constraint a - b."""
        code, out = _run('realize', 'Pappus', '--grid', 'L1,L2,L3;L4,L5,L6')
        self.assertEqual(code, EXIT_CLEAN)
        self.assertEqual(json.loads(out)['constraints'], ['a - b'])

    def test_classify_with_expected_data(self):
        """A registry entry is classified and compared with its expected data."""
        code, out = _run('classify', 'Pappus')
        self.assertEqual(code, EXIT_CLEAN)
        data = json.loads(out)
        self.assertEqual(data['verdict'], 'PositiveDim')
        self.assertEqual(data['mismatches'], [])

    def test_classify_mismatch(self):
        """A tampered registry copy exits with 2."""
        shutil.copy(REGISTRY / 'Pappus.cfg', self.temp_dir / 'Pappus.cfg')
        with open(self.temp_dir / 'expected.yaml', 'w', encoding='utf-8') as handle:
            yaml.safe_dump({'entries': {'Pappus': {
                'grid': {'y': ['L1', 'L2', 'L3'], 'x': ['L4', 'L5', 'L6']},
                'verdict': 'ZeroDim',
            }}}, handle)
        code, out = _run('--registry', str(self.temp_dir), 'classify', 'Pappus')
        self.assertEqual(code, EXIT_MISMATCH)
        self.assertEqual(json.loads(out)['mismatches'], ['verdict: expected ZeroDim, got PositiveDim'])

    def test_enumerate_small(self):
        """Four triples on six lines: one class, written with a manifest."""
        code, out = _run('enumerate', '--k', '6', '--n3', '4', '--min-triples', '0', '--out', str(self.temp_dir / 'ceva'))
        self.assertEqual(code, EXIT_CLEAN)
        data = json.loads(out)
        self.assertEqual(data['count'], 1)
        self.assertTrue((self.temp_dir / 'ceva' / 'manifest.yaml').exists())

    def test_enumerate_match(self):
        """The three (9_3) classes pair with the registry tables."""
        code, out = _run('enumerate', '--k', '9', '--n3', '9', '--exact-three', '--match')
        self.assertEqual(code, EXIT_CLEAN)
        self.assertEqual(sorted(json.loads(out)['matched']), ['(9_3).i', '(9_3).ii', '(9_3).iii'])

    def test_enumerate_infeasible(self):
        """A census without solutions exits with 3."""
        code, _ = _run('enumerate', '--k', '10', '--n3', '14')
        self.assertEqual(code, EXIT_FAILURE)

    def test_report(self):
        """The report writes per-arrangement JSON and exits clean."""
        target = self.temp_dir / 'report.json'
        code, out = _run('report', '--names', 'Pappus', '(9_3).i', '--json', str(target))
        self.assertEqual(code, EXIT_CLEAN)
        self.assertEqual(json.loads(out)['exit_code'], EXIT_CLEAN)
        data = json.loads(target.read_text(encoding='utf-8'))
        self.assertEqual([a['name'] for a in data['arrangements']], ['Pappus', '(9_3).i'])

    def test_classify_conjugate_components_json(self):
        """a^2 - a + 1 splits into conjugate lines; the flag serializes as JSON true."""
        code, out = _run('classify', '11.B.3.b.2.iv')
        self.assertEqual(code, EXIT_CLEAN)
        data = json.loads(out)
        self.assertEqual(data['verdict'], 'PositiveDim')
        self.assertIs(data['conjugate_exchanged'], True)
        self.assertIs(data['zariski_flag'], False)
        self.assertEqual(data['mismatches'], [])

    def test_report_json_with_conjugate_components(self):
        """Per-arrangement JSON holds conjugation-exchanged results."""
        target = self.temp_dir / 'report.json'
        code, _ = _run('report', '--names', '11.B.3.b.2.iii', '11.B.3.b.2.iv', '--json', str(target))
        self.assertEqual(code, EXIT_CLEAN)
        data = json.loads(target.read_text(encoding='utf-8'))
        self.assertEqual([a['moduli']['conjugate_exchanged'] for a in data['arrangements']], [True, True])

    def test_report_empty_selection(self):
        """An empty selection prints an empty summary."""
        code, out = _run('report', '--names')
        self.assertEqual(code, EXIT_CLEAN)
        self.assertEqual(json.loads(out)['summary']['rows'], [])


if __name__ == '__main__':
    unittest.main()
