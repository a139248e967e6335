"""
Grid Choice
Gauge fixing by two pencils of three lines: x=0, x=z, x=az through [0,1,0]
and y=0, y=z, y=bz through [1,0,0].
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence, Tuple, Union

from src.incidence.table import ConfigTable
from src.realization.errors import NoGrid

logger = logging.getLogger(__name__)

LineRef = Union[str, int]
GridHint = Tuple[Sequence[LineRef], Sequence[LineRef]]


@dataclass(frozen=True)
class GridChoice:
    """
    Two pencils fixing the projective gauge.

    Attributes:
        y_lines: Lines assigned y=0, y=z, y=bz, concurrent at y_point
        x_lines: Lines assigned x=0, x=z, x=az, concurrent at x_point
        y_point: Triple point placed at [1,0,0]
        x_point: Triple point placed at [0,1,0]
    """

    y_lines: Tuple[int, int, int]
    x_lines: Tuple[int, int, int]
    y_point: int
    x_point: int

    @property
    def lines(self) -> Tuple[int, ...]:
        return self.y_lines + self.x_lines

    def describe(self, table: ConfigTable) -> str:
        y = ','.join(table.line_labels[i] for i in self.y_lines)
        x = ','.join(table.line_labels[i] for i in self.x_lines)
        return f"y=0,z,bz: {y}; x=0,z,az: {x}"


def _grid_score(table: ConfigTable, p: int, q: int) -> int:
    """Grid crossings that are triple points of the table."""
    return sum(
        1 for i in table.point_lines[p] for j in table.point_lines[q]
        if table.meet(i, j) is not None
    )


def _pencil_point(table: ConfigTable, lines: Tuple[int, int, int]) -> int:
    shared = set(table.lines[lines[0]]) & set(table.lines[lines[1]]) & set(table.lines[lines[2]])
    if not shared:
        labels = [table.line_labels[i] for i in lines]
        raise NoGrid(f"Lines {labels} of {table.name or '<unnamed>'} are not concurrent at a triple point")
    return min(shared)


def _from_hint(table: ConfigTable, hint: GridHint) -> GridChoice:
    y_refs, x_refs = hint
    if len(y_refs) != 3 or len(x_refs) != 3:
        raise NoGrid(f"A grid hint names three y-lines and three x-lines, got {hint}")
    try:
        y_lines = tuple(table.line_index(ref) for ref in y_refs)
        x_lines = tuple(table.line_index(ref) for ref in x_refs)
    except ValueError as e:
        raise NoGrid(str(e)) from e
    if len(set(y_lines + x_lines)) != 6:
        raise NoGrid(f"Grid hint {hint} repeats a line")
    y_point = _pencil_point(table, y_lines)
    x_point = _pencil_point(table, x_lines)
    return GridChoice(y_lines=y_lines, x_lines=x_lines, y_point=y_point, x_point=x_point)


def find_grid(table: ConfigTable, hint: Optional[GridHint] = None) -> GridChoice:
    """
    Choose the two pencils of the gauge.

    Without a hint, every pair of triple points with disjoint line sets is a
    candidate; the pair with the most grid crossings at triple points wins,
    ties going to the first pair in label order.

    Args:
        table: Valid configuration table
        hint: Optional (y_lines, x_lines) by label or index, in the order
            y=0, y=z, y=bz and x=0, x=z, x=az

    Returns:
        GridChoice

    Raises:
        NoGrid: If no candidate pair exists or the hint is not a valid grid
    """
    if hint is not None:
        choice = _from_hint(table, hint)
        logger.debug(f"{table.name}: grid from hint, {choice.describe(table)}")
        return choice

    best: Optional[Tuple[int, int, int]] = None
    for p, q in combinations(range(table.n3), 2):
        if set(table.point_lines[p]) & set(table.point_lines[q]):
            continue
        score = _grid_score(table, p, q)
        if best is None or score > best[0]:
            best = (score, p, q)
    if best is None:
        raise NoGrid(f"No two triple points of {table.name or '<unnamed>'} have disjoint line sets")

    _, p, q = best
    choice = GridChoice(
        y_lines=tuple(table.point_lines[p]),
        x_lines=tuple(table.point_lines[q]),
        y_point=p,
        x_point=q,
    )
    logger.debug(f"{table.name}: grid {choice.describe(table)} with score {best[0]}")
    return choice
