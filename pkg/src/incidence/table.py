"""
Configuration Tables
Lines-by-triple-points incidence tables and the registry file codec.
"""

import logging
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from src.incidence.errors import DuplicateIncidence, ParseError

logger = logging.getLogger(__name__)

HEADER_RE = re.compile(r'^lines:\s*(\d+)\s+triples:\s*(\d+)$')
ROW_RE = re.compile(r'^(L\d+)\s*:(.*)$')
TOKEN_RE = re.compile(r'\S+')
LABEL_RE = re.compile(r'^[A-Za-z0-9_.]+$')


def natural_key(label: str) -> Tuple:
    """Sort key putting e2 before e10."""
    return tuple(int(part) if part.isdigit() else part for part in re.split(r'(\d+)', label))


@dataclass(frozen=True)
class ConfigTable:
    """
    Configuration table of an arrangement with only double and triple points.

    Attributes:
        lines: For each line, the sorted ids of the triple points on it
        point_labels: Input label of each point id
        line_labels: Input label of each line
        name: Arrangement name, empty when unnamed

    Doubles are implicit: two lines sharing no listed point meet in a double point.
    """

    lines: Tuple[Tuple[int, ...], ...]
    point_labels: Tuple[str, ...]
    line_labels: Tuple[str, ...]
    name: str = ''

    @classmethod
    def from_lines(
        cls,
        lines: Sequence[Iterable[int]],
        n3: Optional[int] = None,
        name: str = '',
    ) -> 'ConfigTable':
        """Build a table with dense labels L1.. and e1.. from point-id sets."""
        lines = tuple(tuple(sorted(set(points))) for points in lines)
        if n3 is None:
            n3 = 1 + max((p for points in lines for p in points), default=-1)
        return cls(
            lines=lines,
            point_labels=tuple(f"e{j + 1}" for j in range(n3)),
            line_labels=tuple(f"L{i + 1}" for i in range(len(lines))),
            name=name,
        )

    @classmethod
    def from_blocks(cls, k: int, blocks: Iterable[Iterable[int]], name: str = '') -> 'ConfigTable':
        """Build a table from triple points given as sets of line indices."""
        blocks = [tuple(sorted(b)) for b in blocks]
        lines: List[List[int]] = [[] for _ in range(k)]
        for j, block in enumerate(blocks):
            for i in block:
                lines[i].append(j)
        return cls.from_lines(lines, n3=len(blocks), name=name)

    @property
    def k(self) -> int:
        return len(self.lines)

    @property
    def n3(self) -> int:
        return len(self.point_labels)

    @cached_property
    def point_lines(self) -> Tuple[Tuple[int, ...], ...]:
        """For each point id, the sorted indices of the lines through it."""
        through: List[List[int]] = [[] for _ in range(self.n3)]
        for i, points in enumerate(self.lines):
            for p in points:
                through[p].append(i)
        return tuple(tuple(ls) for ls in through)

    @property
    def blocks(self) -> List[Tuple[int, ...]]:
        return list(self.point_lines)

    def degree(self, line: int) -> int:
        return len(self.lines[line])

    def line_index(self, label: Union[str, int]) -> int:
        """Resolve a line label such as 'L3' (or a 0-based index) to its index."""
        if isinstance(label, int):
            return label
        try:
            return self.line_labels.index(label)
        except ValueError:
            raise ValueError(f"Unknown line {label} in table {self.name or '<unnamed>'}") from None

    def point_index(self, label: str) -> int:
        try:
            return self.point_labels.index(label)
        except ValueError:
            raise ValueError(f"Unknown point {label} in table {self.name or '<unnamed>'}") from None

    def meet(self, first: int, second: int) -> Optional[int]:
        """The triple point shared by two lines, or None for a double point."""
        shared = set(self.lines[first]) & set(self.lines[second])
        return min(shared) if shared else None

    def is_incident(self, line: int, point: int) -> bool:
        return point in self.lines[line]

    def with_name(self, name: str) -> 'ConfigTable':
        return ConfigTable(self.lines, self.point_labels, self.line_labels, name)

    def __str__(self) -> str:
        return f"ConfigTable({self.name or '<unnamed>'}, k={self.k}, n3={self.n3})"


def doubles(table: ConfigTable) -> List[Tuple[int, int]]:
    """Pairs of lines meeting in a double point."""
    return [(i, j) for i, j in combinations(range(table.k), 2) if table.meet(i, j) is None]


def relabel(table: ConfigTable, line_perm: Sequence[int], point_perm: Sequence[int]) -> ConfigTable:
    """
    Apply a permutation of lines and points.

    Args:
        table: Source table
        line_perm: line_perm[i] is the new index of line i
        point_perm: point_perm[j] is the new index of point j

    Returns:
        Relabeled table with dense labels
    """
    if sorted(line_perm) != list(range(table.k)) or sorted(point_perm) != list(range(table.n3)):
        raise ValueError("relabel needs permutations of the line and point indices")
    lines: List[Tuple[int, ...]] = [()] * table.k
    for i, points in enumerate(table.lines):
        lines[line_perm[i]] = tuple(point_perm[p] for p in points)
    return ConfigTable.from_lines(lines, n3=table.n3, name=table.name)


def parse_table(text: str, name: str = '') -> ConfigTable:
    """
    Read a table in the registry format.

    The format is a header 'lines: <k> triples: <n3>' followed by one row
    'L<i>: <label> <label> ...' per line; '#' starts a comment.

    Args:
        text: File contents
        name: Arrangement name to attach

    Returns:
        ConfigTable with point labels interned in natural order

    Raises:
        ParseError: On malformed text or header/row disagreement
        DuplicateIncidence: If a row lists the same point twice
    """
    header: Optional[Tuple[int, int, int]] = None
    rows: Dict[str, List[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = raw.split('#', 1)[0].rstrip()
        if not content.strip():
            continue
        column = len(content) - len(content.lstrip()) + 1
        stripped = content.strip()
        if header is None:
            match = HEADER_RE.match(stripped)
            if not match:
                raise ParseError(f"expected header 'lines: <k> triples: <n3>', got '{stripped}'", lineno, column)
            header = (int(match.group(1)), int(match.group(2)), lineno)
            continue
        match = ROW_RE.match(stripped)
        if not match:
            raise ParseError(f"expected row 'L<i>: <points>', got '{stripped}'", lineno, column)
        line_label = match.group(1)
        if line_label in rows:
            raise ParseError(f"line {line_label} listed twice", lineno, column)
        offset = column - 1 + stripped.index(':') + 1
        labels: List[str] = []
        for token in TOKEN_RE.finditer(match.group(2)):
            label = token.group(0)
            if not LABEL_RE.match(label):
                raise ParseError(f"invalid point label '{label}'", lineno, offset + token.start() + 1)
            if label in labels:
                raise DuplicateIncidence(f"Point {label} listed twice on {line_label} (line {lineno})")
            labels.append(label)
        rows[line_label] = labels

    if header is None:
        raise ParseError("empty table, missing header", 1, 1)
    k, n3, header_line = header
    if len(rows) != k:
        raise ParseError(f"header declares {k} lines but {len(rows)} rows are given", header_line, 1)
    all_labels = sorted({label for labels in rows.values() for label in labels}, key=natural_key)
    if len(all_labels) != n3:
        raise ParseError(f"header declares {n3} triples but {len(all_labels)} point labels occur", header_line, 1)

    point_id = {label: j for j, label in enumerate(all_labels)}
    line_labels = sorted(rows, key=natural_key)
    lines = tuple(tuple(sorted(point_id[label] for label in rows[ll])) for ll in line_labels)
    table = ConfigTable(lines=lines, point_labels=tuple(all_labels), line_labels=tuple(line_labels), name=name)
    logger.debug(f"Parsed {table}")
    return table


def read_table(path: Union[str, Path], name: Optional[str] = None) -> ConfigTable:
    """Read a table file; the name defaults to the file's '# name:' comment or stem."""
    path = Path(path)
    text = path.read_text(encoding='utf-8')
    if name is None:
        name = path.stem
        for raw in text.splitlines():
            stripped = raw.strip()
            if stripped.startswith('# name:'):
                name = stripped[len('# name:'):].strip()
                break
    return parse_table(text, name=name)


def format_table(table: ConfigTable, comments: Optional[Dict[int, str]] = None) -> str:
    """
    Write a table in the registry format with dense labels.

    Args:
        table: Table to write
        comments: Optional trailing comment per line index

    Returns:
        File text ending with a newline
    """
    out: List[str] = []
    if table.name:
        out.append(f"# name: {table.name}")
    out.append(f"lines: {table.k} triples: {table.n3}")
    for i, points in enumerate(table.lines):
        row = f"L{i + 1}: " + ' '.join(f"e{p + 1}" for p in sorted(points))
        if comments and i in comments:
            row += f"  # {comments[i]}"
        out.append(row.rstrip())
    return '\n'.join(out) + '\n'
