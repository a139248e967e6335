"""
Line arrangement workbench.

Commands:
  validate <table>   check the incidence axioms and print the line census
  canon <table>      canonical form digest, canonical table and automorphism count
  enumerate          all tables with k lines and n3 triples up to isomorphism
  realize <table>    coordinates, constraints and inequations of a realization
  classify <table>   moduli space verdict of a realization
  report             run the registry pipeline and the summary table

A <table> is a .cfg path or a registry name. Exit status: 0 clean,
2 mismatch with expected data, 3 parse, validation or realization failure.
"""

import sys
import json
import argparse
import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import yaml

from src.algebra.errors import AlgebraError
from src.enumeration.enumerator import enumerate_tables, match_registry, write_enumeration
from src.enumeration.errors import CountMismatch, InfeasibleCensus
from src.incidence.canonical import automorphism_group_order, canonical_form, canonical_table
from src.incidence.census import validate
from src.incidence.errors import TableError
from src.incidence.table import ConfigTable, format_table, read_table
from src.moduli.classifier import check_degenerations, classify
from src.moduli.errors import EliminationOverflow
from src.moduli.system import ConstraintSystem
from src.realization.errors import RealizationError
from src.realization.grid import GridHint
from src.realization.realizer import realize
from src.workbench.config import LOG_FORMAT, load_config
from src.workbench.diff import diff_expected
from src.workbench.errors import RegistryError
from src.workbench.pipeline import EXIT_CLEAN, EXIT_FAILURE, EXIT_MISMATCH, run_pipeline
from src.workbench.registry import RegistryEntry, load_registry

logger = logging.getLogger(__name__)


def _emit(data: Dict, output_format: str):
    if output_format == 'text':
        print(yaml.safe_dump(data, sort_keys=False, allow_unicode=True), end='')
    else:
        print(json.dumps(data, indent=2))


def parse_grid(text: Optional[str]) -> Optional[GridHint]:
    """'L1,L2,L3;L4,L5,L6' -> (y_lines, x_lines)."""
    if not text:
        return None
    try:
        y_part, x_part = text.split(';')
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 'L1,L2,L3;L4,L5,L6', got '{text}'")
    return tuple(s.strip() for s in y_part.split(',')), tuple(s.strip() for s in x_part.split(','))


def _resolve(ref: str, config: Dict) -> Tuple[ConfigTable, Optional[RegistryEntry]]:
    """A .cfg path, or a registry name with its expected data."""
    path = Path(ref)
    if path.exists():
        return read_table(path), None
    entry = load_registry(config['registry']).get(ref)
    return entry.table, entry


def cmd_validate(args, config: Dict) -> int:
    table, _ = _resolve(args.table, config)
    census = validate(table)
    _emit({'name': table.name, 'valid': True, 'census': census.as_dict()}, args.format)
    return EXIT_CLEAN


def cmd_canon(args, config: Dict) -> int:
    table, _ = _resolve(args.table, config)
    validate(table)
    _emit({
        'name': table.name,
        'digest': canonical_form(table).digest(),
        'automorphisms': automorphism_group_order(table),
        'table': format_table(canonical_table(table)),
    }, args.format)
    return EXIT_CLEAN


def cmd_enumerate(args, config: Dict) -> int:
    classes = enumerate_tables(
        args.k,
        args.n3,
        exact_three=args.exact_three,
        min_triples=args.min_triples,
        shuffle_seed=args.shuffle_seed,
    )
    data = {
        'k': args.k,
        'n3': args.n3,
        'count': len(classes),
        'classes': [{'name': c.table.name, 'digest': c.form.digest()} for c in classes],
    }
    if args.out:
        data['manifest'] = str(write_enumeration(classes, args.out))
    status = EXIT_CLEAN
    if args.match:
        registry = load_registry(config['registry'])
        tables = [
            e.table for e in registry.entries
            if e.table.k == args.k and e.table.n3 == args.n3
        ]
        by_form = {c.form: c.table.name for c in classes}
        try:
            mapping = match_registry(classes, tables)
        except CountMismatch as e:
            logger.warning(str(e))
            mapping = e.matched
            data['unmatched_registry'] = list(e.unmatched_names)
            data['unmatched_classes'] = [by_form[form] for form in e.unmatched_classes]
            status = EXIT_MISMATCH
        data['matched'] = {name: by_form[form] for name, form in sorted(mapping.items())}
    _emit(data, args.format)
    return status


def cmd_realize(args, config: Dict) -> int:
    table, entry = _resolve(args.table, config)
    hint = args.grid or (entry.grid_hint if entry else None)
    validate(table)
    state = realize(table, hint)
    _emit(state.to_dict(table, dump=args.dump_state), args.format)
    return EXIT_CLEAN


def cmd_classify(args, config: Dict) -> int:
    table, entry = _resolve(args.table, config)
    hint = args.grid or (entry.grid_hint if entry else None)
    validate(table)
    state = realize(table, hint)
    system = ConstraintSystem.from_state(state)
    report = classify(system, config['max_degree'], verifier=lambda root: check_degenerations(state, table, root))
    data = {'name': table.name, **report.to_dict()}
    status = EXIT_CLEAN
    if entry is not None and entry.expected:
        mismatches = diff_expected(report, entry, system, config['samples'], config['seed'], config['max_degree'])
        data['mismatches'] = mismatches
        status = EXIT_MISMATCH if mismatches else EXIT_CLEAN
    _emit(data, args.format)
    return status


def cmd_report(args, config: Dict) -> int:
    result = run_pipeline(names=args.names, config=config, workers=args.workers)
    if args.json:
        with open(args.json, 'w', encoding='utf-8') as handle:
            json.dump(result.to_dict(), handle, indent=2)
        logger.info(f"Wrote {len(result.reports)} reports to {args.json}")
    comparison = result.summary.compare_with_expected()
    if args.format == 'text':
        print(comparison.to_string() if not comparison.empty else result.summary.to_dataframe().to_string())
        for note in result.summary.notes:
            print(f"note: {note}")
    else:
        print(json.dumps({'exit_code': result.exit_code, 'summary': result.summary.to_dict()}, indent=2))
    return result.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument('--registry', type=str, default=None, help='Registry directory (overrides WORKBENCH_REGISTRY)')
    parser.add_argument('--samples', type=int, default=None, help='Sample points per solution-set comparison')
    parser.add_argument('--format', choices=['json', 'text'], default='json', help='Output format')
    parser.add_argument('--log-level', type=str, default=None, help='Logging level (overrides WORKBENCH_LOG_LEVEL)')
    commands = parser.add_subparsers(dest='command', required=True)

    p = commands.add_parser('validate', help='Check a table and print its census')
    p.add_argument('table')
    p.set_defaults(handler=cmd_validate)

    p = commands.add_parser('canon', help='Canonical form of a table')
    p.add_argument('table')
    p.set_defaults(handler=cmd_canon)

    p = commands.add_parser('enumerate', help='Enumerate tables up to isomorphism')
    p.add_argument('--k', type=int, required=True, help='Number of lines')
    p.add_argument('--n3', type=int, required=True, help='Number of triple points')
    p.add_argument('--exact-three', action='store_true', help='Exactly three triples on every line')
    p.add_argument('--min-triples', type=int, default=3, help='Fewest triples per line')
    p.add_argument('--shuffle-seed', type=int, default=None, help='Permute the branching order')
    p.add_argument('--out', type=str, default=None, help='Write .cfg files and manifest.yaml here')
    p.add_argument('--match', action='store_true', help='Pair classes with registry tables')
    p.set_defaults(handler=cmd_enumerate)

    for name, handler, text in (
        ('realize', cmd_realize, 'Coordinatize a table'),
        ('classify', cmd_classify, 'Classify the moduli space of a table'),
    ):
        p = commands.add_parser(name, help=text)
        p.add_argument('table')
        p.add_argument('--grid', type=parse_grid, default=None, help="Gauge 'y0,y1,yb;x0,x1,xa' by line label")
        if name == 'realize':
            p.add_argument('--dump-state', action='store_true', help='Include points and the construction plan')
        p.set_defaults(handler=handler)

    p = commands.add_parser('report', help='Run the registry pipeline')
    p.add_argument('--names', nargs='*', default=None, help='Restrict to these arrangements')
    p.add_argument('--json', type=str, default=None, help='Write per-arrangement reports to this path')
    p.add_argument('--workers', type=int, default=1, help='Worker processes')
    p.set_defaults(handler=cmd_report)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config({'registry': args.registry, 'samples': args.samples, 'log_level': args.log_level})
    except ValueError as e:
        parser.error(str(e))
    logging.basicConfig(level=getattr(logging, config['log_level'].upper(), logging.INFO), format=LOG_FORMAT)

    try:
        return args.handler(args, config)
    except (TableError, RealizationError, RegistryError, InfeasibleCensus, EliminationOverflow, AlgebraError,
            KeyError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_FAILURE


if __name__ == '__main__':
    sys.exit(main())
