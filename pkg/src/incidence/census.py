"""
Line Census
Validation of configuration tables and the counting identities relating the
number of lines, double points and triple points.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional

from src.incidence.errors import CensusMismatch, NotTriplePoint, RepeatedPair
from src.incidence.table import ConfigTable

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LineCensus:
    """
    Census of a table.

    Attributes:
        k: Number of lines
        n3: Number of triple points
        n2: Number of double points, k(k-1)/2 - 3*n3
        ell: ell[i] is the number of lines through exactly i triple points
    """

    k: int
    n3: int
    n2: int
    ell: Dict[int, int] = field(default_factory=dict)

    def __hash__(self) -> int:
        return hash((self.k, self.n3, self.n2, tuple(sorted(self.ell.items()))))

    def as_dict(self) -> Dict:
        return {
            'k': self.k,
            'n2': self.n2,
            'n3': self.n3,
            'ell': {str(i): count for i, count in sorted(self.ell.items())},
        }


def double_count(k: int, n3: int) -> int:
    """Doubles implied by the pair count when all other points are triples."""
    return k * (k - 1) // 2 - 3 * n3


def max_triples_per_line(k: int) -> int:
    """A line through t triples meets 2t distinct other lines."""
    return max(0, (k - 1) // 2)


def validate(table: ConfigTable) -> LineCensus:
    """
    Check the incidence axioms and return the census.

    Args:
        table: Parsed table

    Returns:
        LineCensus of the table

    Raises:
        NotTriplePoint: If a point is on a number of lines other than 3
        RepeatedPair: If two lines share two or more points
        CensusMismatch: If the counting identities fail
    """
    for j, lines in enumerate(table.point_lines):
        if len(lines) != 3:
            raise NotTriplePoint(table.point_labels[j], len(lines))

    for i, j in combinations(range(table.k), 2):
        shared = set(table.lines[i]) & set(table.lines[j])
        if len(shared) > 1:
            raise RepeatedPair(
                table.line_labels[i], table.line_labels[j],
                sorted(table.point_labels[p] for p in shared),
            )

    ell: Dict[int, int] = {}
    for points in table.lines:
        ell[len(points)] = ell.get(len(points), 0) + 1
    n2 = double_count(table.k, table.n3)

    if sum(ell.values()) != table.k:
        raise CensusMismatch(f"Line counts {ell} do not sum to k={table.k}")
    if sum(i * c for i, c in ell.items()) != 3 * table.n3:
        raise CensusMismatch(f"Incidences {ell} do not equal 3*n3={3 * table.n3}")
    if n2 < 0:
        raise CensusMismatch(f"Negative double count {n2} for k={table.k}, n3={table.n3}")

    census = LineCensus(k=table.k, n3=table.n3, n2=n2, ell=ell)
    logger.debug(f"Validated {table}: ell={ell}, n2={n2}")
    return census


def line_census(
    k: int,
    n3: int,
    min_triples: int = 3,
    max_triples: Optional[int] = None,
) -> List[Dict[int, int]]:
    """
    All line censuses compatible with k lines and n3 triple points.

    Solves sum(ell) = k and sum(i * ell_i) = 3 * n3 over nonnegative
    integers, with ell_i = 0 outside [min_triples, max_triples].

    Args:
        k: Number of lines
        n3: Number of triple points
        min_triples: Fewest triples allowed on a line
        max_triples: Most triples allowed on a line; defaults to (k - 1) // 2

    Returns:
        List of ell dictionaries (zero entries omitted), in lexicographic order
    """
    upper = max_triples_per_line(k) if max_triples is None else min(max_triples, max_triples_per_line(k))
    if k < 0 or n3 < 0 or min_triples > upper:
        return []
    degrees = list(range(min_triples, upper + 1))
    results: List[Dict[int, int]] = []

    def extend(idx: int, lines_left: int, incidences_left: int, current: Dict[int, int]):
        if idx == len(degrees) - 1:
            d = degrees[idx]
            if lines_left * d == incidences_left:
                solution = dict(current)
                if lines_left:
                    solution[d] = lines_left
                results.append(solution)
            return
        d = degrees[idx]
        for count in range(lines_left, -1, -1):
            if count * d > incidences_left:
                continue
            if count:
                current[d] = count
            extend(idx + 1, lines_left - count, incidences_left - count * d, current)
            current.pop(d, None)

    extend(0, k, 3 * n3, {})
    return results


def hirzebruch_feasible(k: int, n2: int, n3: int) -> bool:
    """
    Hirzebruch's inequality n2 + (3/4) n3 >= k for arrangements with only
    double and triple points.
    """
    return 4 * n2 + 3 * n3 >= 4 * k


# --- counting facts ------------------------------------------------------------

def two_triples_need_five_lines(k: int, n3: int) -> bool:
    return n3 < 2 or k >= 5


def three_triple_line_needs_six_others(k: int, ell: Dict[int, int]) -> bool:
    return not any(i >= 3 and c for i, c in ell.items()) or k - 1 >= 6


def four_triple_line_needs_eight_others(k: int, ell: Dict[int, int]) -> bool:
    return not any(i >= 4 and c for i, c in ell.items()) or k - 1 >= 8


def noncollinear_triples_need_six_lines(k: int, n3: int, ell: Dict[int, int]) -> bool:
    """Three triples not all on one line need six lines."""
    if n3 < 3:
        return True
    if n3 == 3 and any(i >= 3 and c for i, c in ell.items()):
        return True
    return k >= 6


def six_lines_at_most_four_triples(table: ConfigTable) -> bool:
    """No six lines of the table carry five or more of its triple points."""
    if table.k < 6:
        return True
    blocks = [set(b) for b in table.point_lines]
    for subset in combinations(range(table.k), 6):
        chosen = set(subset)
        if sum(1 for b in blocks if b <= chosen) > 4:
            return False
    return True


def census_violations(k: int, n3: int, ell: Dict[int, int]) -> List[str]:
    """Names of the counting facts a census violates."""
    checks = {
        'two triples need five lines': two_triples_need_five_lines(k, n3),
        'a line with three triples needs six other lines': three_triple_line_needs_six_others(k, ell),
        'a line with four triples needs eight other lines': four_triple_line_needs_eight_others(k, ell),
        'three non-collinear triples need six lines': noncollinear_triples_need_six_lines(k, n3, ell),
    }
    return [name for name, ok in checks.items() if not ok]
