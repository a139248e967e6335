"""
Arrangement Registry
Loads the named configuration tables and the expected data transcribed for
them, collecting per-file failures instead of aborting.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import yaml

from src.algebra.errors import AlgebraError
from src.algebra.polynomial import PARAMETERS, parse_poly
from src.incidence.errors import TableError
from src.incidence.table import ConfigTable, natural_key, read_table
from src.realization.grid import GridHint
from src.workbench.config import load_config
from src.workbench.errors import ExpectedDataError, RegistryError

logger = logging.getLogger(__name__)

EXPECTED_FILE = 'expected.yaml'
EXPECTED_KEYS = {
    'family', 'geometric', 'zariski', 'verdict', 'grid', 'eliminant',
    'constraints', 'dimension', 'real_count', 'orbit_count', 'note',
}
VERDICTS = ('Empty', 'ZeroDim', 'PositiveDim')


@dataclass
class RegistryEntry:
    """
    One named arrangement.

    Attributes:
        name: Identifier such as '12.B.3.b.iii' or '(9_3).ii.DFH'
        table: Parsed configuration table
        path: Source .cfg file
        expected: Normalized expected data, polynomials in canonical text
    """

    name: str
    table: ConfigTable
    path: Path
    expected: Optional[Dict] = None

    @property
    def family(self) -> str:
        if self.expected and self.expected.get('family'):
            return self.expected['family']
        return self.name.rsplit('.', 1)[0]

    @property
    def grid_hint(self) -> Optional[GridHint]:
        grid = (self.expected or {}).get('grid')
        if not grid:
            return None
        return tuple(grid['y']), tuple(grid['x'])


@dataclass
class Registry:
    """Loaded registry: entries in natural name order plus everything that failed to load."""

    directory: Path
    entries: List[RegistryEntry] = field(default_factory=list)
    failures: Dict[str, str] = field(default_factory=dict)
    summary: Dict = field(default_factory=dict)

    def names(self) -> List[str]:
        return [entry.name for entry in self.entries]

    def get(self, name: str) -> RegistryEntry:
        for entry in self.entries:
            if entry.name == name:
                return entry
        raise KeyError(f"No arrangement named {name} in {self.directory}")

    def select(self, names: Optional[Sequence[str]] = None) -> Tuple[List[RegistryEntry], List[str]]:
        """
        Entries by name, in the order given.

        Args:
            names: Selection; None selects every entry

        Returns:
            (entries found, names not in the registry)
        """
        if names is None:
            return list(self.entries), []
        by_name = {entry.name: entry for entry in self.entries}
        found = [by_name[name] for name in names if name in by_name]
        missing = [name for name in names if name not in by_name]
        return found, missing


def _canonical(name: str, text) -> str:
    try:
        p = parse_poly(str(text))
    except AlgebraError as e:
        raise ExpectedDataError(name, f"cannot parse '{text}': {e}") from e
    if p.is_zero:
        raise ExpectedDataError(name, f"'{text}' is the zero polynomial")
    return p.normalized().to_text()


def normalize_expected(name: str, data: Dict) -> Dict:
    """
    Check one expected entry and bring its polynomials to canonical text.

    Args:
        name: Arrangement name, for error messages
        data: Raw mapping from expected.yaml

    Returns:
        A new mapping; constraints and the eliminant in canonical text

    Raises:
        ExpectedDataError: On unknown keys, a bad verdict or grid, or unparsable polynomials
    """
    if not isinstance(data, dict):
        raise ExpectedDataError(name, f"expected a mapping, got {type(data).__name__}")
    unknown = sorted(set(data) - EXPECTED_KEYS)
    if unknown:
        raise ExpectedDataError(name, f"unknown keys {unknown}")
    result = dict(data)
    if 'verdict' in result and result['verdict'] not in VERDICTS:
        raise ExpectedDataError(name, f"verdict must be one of {VERDICTS}, got {result['verdict']}")
    if 'grid' in result:
        grid = result['grid']
        if not isinstance(grid, dict) or len(grid.get('y', ())) != 3 or len(grid.get('x', ())) != 3:
            raise ExpectedDataError(name, f"grid needs three y-lines and three x-lines, got {grid}")
        result['grid'] = {'y': [str(ref) for ref in grid['y']], 'x': [str(ref) for ref in grid['x']]}
    if 'constraints' in result:
        result['constraints'] = [_canonical(name, text) for text in result['constraints']]
    if 'eliminant' in result:
        eliminant = result['eliminant']
        var = eliminant.get('var') if isinstance(eliminant, dict) else None
        if var not in PARAMETERS:
            raise ExpectedDataError(name, f"eliminant needs a variable from {PARAMETERS}, got {eliminant}")
        poly = _canonical(name, eliminant.get('poly'))
        if set(parse_poly(poly).variables) - {var}:
            raise ExpectedDataError(name, f"eliminant {poly} is not a polynomial in {var}")
        result['eliminant'] = {'var': var, 'poly': poly}
    return result


def load_expected(path: Union[str, Path]) -> Dict:
    """
    Read expected.yaml.

    Returns:
        Mapping with 'entries' (name -> raw entry) and 'summary'; both empty
        when the file does not exist
    """
    path = Path(path)
    if not path.exists():
        logger.info(f"No expected data at {path}")
        return {'entries': {}, 'summary': {}}
    with open(path, 'r', encoding='utf-8') as handle:
        data = yaml.safe_load(handle) or {}
    return {'entries': data.get('entries') or {}, 'summary': data.get('summary') or {}}


def load_registry(directory: Optional[Union[str, Path]] = None) -> Registry:
    """
    Load every .cfg file of a registry directory.

    A file that does not parse, a repeated name, or malformed expected data is
    recorded in Registry.failures with a warning and loading continues.

    Args:
        directory: Registry directory; defaults to WORKBENCH_REGISTRY

    Returns:
        Registry

    Raises:
        RegistryError: If the directory does not exist
    """
    directory = Path(directory) if directory is not None else load_config()['registry']
    if not directory.is_dir():
        raise RegistryError(f"Registry directory {directory} does not exist")

    expected = load_expected(directory / EXPECTED_FILE)
    registry = Registry(directory=directory, summary=expected['summary'])
    seen = set()
    for path in sorted(directory.glob('*.cfg'), key=lambda p: natural_key(p.stem)):
        try:
            table = read_table(path)
        except (TableError, OSError) as e:
            logger.warning(f"Skipping {path.name}: {e}")
            registry.failures[path.stem] = str(e)
            continue
        name = table.name
        if name in seen:
            logger.warning(f"Skipping {path.name}: name {name} already used")
            registry.failures[path.stem] = f"duplicate name {name}"
            continue
        seen.add(name)
        raw = expected['entries'].get(name)
        try:
            data = normalize_expected(name, raw) if raw is not None else None
        except ExpectedDataError as e:
            logger.warning(str(e))
            registry.failures[name] = str(e)
            continue
        registry.entries.append(RegistryEntry(name=name, table=table, path=path, expected=data))

    for name in expected['entries']:
        if name not in seen:
            message = f"expected data for {name} but no table"
            logger.warning(message)
            registry.failures[name] = message

    logger.info(f"Loaded {len(registry.entries)} arrangements from {directory}, {len(registry.failures)} failures")
    return registry
