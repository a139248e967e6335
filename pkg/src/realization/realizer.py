"""
Realizer
Propagates exact projective coordinates from the grid through a
configuration table and records the defining constraints and the
non-degeneracy inequations.
"""

import logging
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from math import gcd, lcm
from typing import Dict, List, Optional, Sequence, Set, Tuple

from sympy import Rational

from src.algebra.operations import cross, det3, dot
from src.algebra.polynomial import PARAMETERS, MultiPoly, RationalFunction, canonical_texts
from src.incidence.table import ConfigTable
from src.realization.errors import (
    DisconnectedTable,
    InconsistentIncidence,
    ParameterBudgetExceeded,
)
from src.realization.grid import GridChoice, GridHint, find_grid

logger = logging.getLogger(__name__)

Vector = Tuple[MultiPoly, MultiPoly, MultiPoly]

MAX_PARAMETERS = len(PARAMETERS)


@dataclass(frozen=True)
class Condition:
    """A polynomial that must vanish (constraint) or must not (inequation), with its origin."""

    poly: MultiPoly
    reason: str

    def to_dict(self) -> Dict[str, str]:
        return {'poly': self.poly.to_text(), 'reason': self.reason}


@dataclass(frozen=True)
class PlanStep:
    """
    One step of the construction.

    Attributes:
        kind: 'grid-line', 'grid-point', 'point', 'line', 'point-parameter' or 'line-parameter'
        index: Index of the line or point constructed
        via: Elements it was built from (lines for a point, points for a line)
        parameter: Fresh parameter introduced by this step, if any
    """

    kind: str
    index: int
    via: Tuple[int, ...] = ()
    parameter: Optional[str] = None

    @property
    def is_line(self) -> bool:
        return self.kind in ('grid-line', 'line', 'line-parameter')


@dataclass
class RealizationState:
    """
    Coordinates, parameters and conditions of a table being realized.

    Lines carry dual coordinates [A, B, C] of Ax + By + Cz = 0; every entry is
    a polynomial in the parameters.
    """

    grid: GridChoice
    lines: Dict[int, Vector] = field(default_factory=dict)
    points: Dict[int, Vector] = field(default_factory=dict)
    params: List[str] = field(default_factory=list)
    constraints: List[Condition] = field(default_factory=list)
    inequations: List[Condition] = field(default_factory=list)
    plan: List[PlanStep] = field(default_factory=list)
    checked_incidences: Set[Tuple[int, int]] = field(default_factory=set)
    checked_triples: Set[Tuple[int, int, int]] = field(default_factory=set)

    def is_complete(self, table: ConfigTable) -> bool:
        return len(self.lines) == table.k and len(self.points) == table.n3

    def constraint_polys(self) -> List[MultiPoly]:
        return [c.poly for c in self.constraints]

    def inequation_polys(self) -> List[MultiPoly]:
        return [c.poly for c in self.inequations]

    def constraint_texts(self) -> List[str]:
        return canonical_texts(self.constraint_polys())

    def add_constraint(self, poly: MultiPoly, reason: str) -> bool:
        if poly.is_zero or any(c.poly == poly for c in self.constraints):
            return False
        self.constraints.append(Condition(poly, reason))
        logger.debug(f"Constraint {poly} from {reason}")
        return True

    def add_inequation(self, poly: MultiPoly, reason: str) -> bool:
        if any(c.poly == poly for c in self.inequations):
            return False
        self.inequations.append(Condition(poly, reason))
        return True

    def to_dict(self, table: ConfigTable, dump: bool = False) -> Dict:
        """Serializable summary; dump adds point coordinates and the construction plan."""
        result = {
            'name': table.name,
            'grid': self.grid.describe(table),
            'params': list(self.params),
            'lines': {table.line_labels[i]: line_equation_text(v) for i, v in sorted(self.lines.items())},
            'constraints': self.constraint_texts(),
            'inequations': canonical_texts(self.inequation_polys()),
        }
        if dump:
            result['points'] = {table.point_labels[j]: vector_text(v) for j, v in sorted(self.points.items())}
            result['plan'] = [
                {'kind': step.kind, 'element': _element_label(table, step), 'parameter': step.parameter}
                for step in self.plan
            ]
        return result


# --- vectors ------------------------------------------------------------------

def _integer_scale(polys: Sequence[MultiPoly]) -> Rational:
    """Rational s making s * polys integral with coprime coefficients."""
    coeffs = [Rational(c) for p in polys for _, c in p.poly.terms()]
    denom = reduce(lcm, (int(c.q) for c in coeffs), 1)
    content = reduce(gcd, (abs(int(c.p)) * (denom // int(c.q)) for c in coeffs), 0)
    return Rational(denom, content)


def normalize_vector(entries: Sequence) -> Vector:
    """
    Polynomial representative of a projective triple.

    Clears denominators and the polynomial gcd of the entries; the last
    nonzero entry becomes 1 when it is a constant, otherwise the entries are
    made integral and primitive.
    """
    entries = [RationalFunction.coerce(e) for e in entries]
    nonzero = [e for e in entries if not e.is_zero]
    if not nonzero:
        return (MultiPoly.zero(), MultiPoly.zero(), MultiPoly.zero())
    den = MultiPoly.one()
    for e in nonzero:
        den = den * e.den.exquo(den.gcd(e.den))
    polys = [e.num * den.exquo(e.den) if not e.is_zero else MultiPoly.zero() for e in entries]
    common = reduce(lambda acc, p: acc.gcd(p), [p for p in polys if not p.is_zero])
    if not common.is_constant:
        polys = [p.exquo(common) if not p.is_zero else p for p in polys]
    last = [p for p in polys if not p.is_zero][-1]
    if last.is_constant:
        scale = 1 / last.constant_value()
    else:
        scale = _integer_scale([p for p in polys if not p.is_zero])
    return tuple(p * scale for p in polys)


def is_zero_vector(vector: Sequence[MultiPoly]) -> bool:
    return all(p.is_zero for p in vector)


def vector_text(vector: Sequence[MultiPoly]) -> str:
    return '[' + ', '.join(p.to_text() for p in vector) + ']'


def _coefficient_term(coeff: RationalFunction, var: str) -> Optional[str]:
    if coeff.is_zero:
        return None
    text = coeff.to_text()
    if text == '1':
        return var
    if text == '-1':
        return f"-{var}"
    if coeff.is_polynomial and len(coeff.num.terms()) == 1:
        return f"{text}*{var}"
    return f"({text})*{var}"


def line_equation_text(vector: Sequence[MultiPoly]) -> str:
    """
    Render dual coordinates as 'y = A*x + B*z' or, for vertical lines, 'x = C*z'.

    Examples:
        [0, 1, -b]  -> 'y = b*z'
        [1, 0, -1]  -> 'x = z'
        [1-b, -1, b] -> 'y = (-b + 1)*x + b*z'
    """
    A, B, C = (RationalFunction.coerce(p) for p in vector)
    if not B.is_zero:
        lhs, terms = 'y', [_coefficient_term(-A / B, 'x'), _coefficient_term(-C / B, 'z')]
    elif not A.is_zero:
        lhs, terms = 'x', [_coefficient_term(-C / A, 'z')]
    else:
        return 'z = 0'
    terms = [t for t in terms if t]
    if not terms:
        return f"{lhs} = 0"
    body = terms[0]
    for t in terms[1:]:
        body += f" - {t[1:]}" if t.startswith('-') else f" + {t}"
    return f"{lhs} = {body}"


def _element_label(table: ConfigTable, step: PlanStep) -> str:
    return table.line_labels[step.index] if step.is_line else table.point_labels[step.index]


# --- gauge -------------------------------------------------------------------

def gauge_inequations() -> List[Condition]:
    a, b = MultiPoly.variable('a'), MultiPoly.variable('b')
    return [
        Condition(a, 'grid: a != 0'),
        Condition((a - 1).normalized(), 'grid: a != 1'),
        Condition(b, 'grid: b != 0'),
        Condition((b - 1).normalized(), 'grid: b != 1'),
    ]


def strip_gauge_factors(p: MultiPoly) -> MultiPoly:
    """Divide out the factors a, a-1, b, b-1, which never vanish in the gauge."""
    if p.is_zero:
        return p
    for condition in gauge_inequations():
        while not p.is_constant and condition.poly.divides(p):
            p = p.exquo(condition.poly)
    return p.normalized()


def seed_grid(choice: GridChoice) -> RealizationState:
    """
    Assign the six grid lines and the two pencil points.

    Returns:
        State with parameters [a, b], the grid inequations, and the pencil
        points at [1,0,0] (y-lines) and [0,1,0] (x-lines)
    """
    a, b = MultiPoly.variable('a'), MultiPoly.variable('b')
    zero, one = MultiPoly.zero(), MultiPoly.one()
    y_coords = [(zero, one, zero), (zero, one, -one), (zero, one, -b)]
    x_coords = [(one, zero, zero), (one, zero, -one), (one, zero, -a)]

    state = RealizationState(grid=choice, params=['a', 'b'])
    for line, coords in zip(choice.y_lines + choice.x_lines, y_coords + x_coords):
        state.lines[line] = coords
        state.plan.append(PlanStep('grid-line', line))
    state.points[choice.y_point] = (one, zero, zero)
    state.points[choice.x_point] = (zero, one, zero)
    state.plan.append(PlanStep('grid-point', choice.y_point, choice.y_lines))
    state.plan.append(PlanStep('grid-point', choice.x_point, choice.x_lines))
    for condition in gauge_inequations():
        state.add_inequation(condition.poly, condition.reason)
    return state


# --- propagation ---------------------------------------------------------------

def _first_nonzero_cross(
    known: Sequence[int],
    coords: Dict[int, Vector],
    element: str,
    labels: Sequence[str],
) -> Tuple[Vector, Tuple[int, int]]:
    for first, second in combinations(known, 2):
        vector = normalize_vector(cross(coords[first], coords[second]))
        if not is_zero_vector(vector):
            return vector, (first, second)
    raise InconsistentIncidence(element, [labels[i] for i in known])


def _record_constraints(state: RealizationState, table: ConfigTable):
    for i, points in enumerate(table.lines):
        if i not in state.lines:
            continue
        for j in points:
            if j not in state.points or (i, j) in state.checked_incidences:
                continue
            state.checked_incidences.add((i, j))
            value = dot(state.lines[i], state.points[j])
            if value.is_zero:
                continue
            poly = strip_gauge_factors(value.num.normalized())
            state.add_constraint(poly, f"{table.point_labels[j]} on {table.line_labels[i]}")


def _record_inequations(state: RealizationState, table: ConfigTable):
    blocks = {frozenset(b) for b in table.point_lines}
    known = sorted(state.lines)
    for triple in combinations(known, 3):
        if triple in state.checked_triples or frozenset(triple) in blocks:
            continue
        state.checked_triples.add(triple)
        det = det3([state.lines[i] for i in triple])
        labels = ', '.join(table.line_labels[i] for i in triple)
        state.add_inequation(det, f"{labels} not concurrent")


def propagate(state: RealizationState, table: ConfigTable) -> RealizationState:
    """
    Coordinatize everything forced by the current state.

    A point on two coordinatized lines gets their cross product, a line through
    two coordinatized points likewise, until nothing changes. Every remaining
    incidence between coordinatized elements that does not hold identically
    becomes a constraint; constraints are not substituted back. Triples of
    coordinatized lines that are not concurrent in the table contribute their
    determinant as an inequation.

    Args:
        state: Seeded state, modified in place
        table: The table being realized

    Returns:
        The same state

    Raises:
        InconsistentIncidence: If a forced coordinate is the zero vector
    """
    changed = True
    while changed:
        changed = False
        for j in range(table.n3):
            if j in state.points:
                continue
            known = [i for i in table.point_lines[j] if i in state.lines]
            if len(known) < 2:
                continue
            vector, via = _first_nonzero_cross(known, state.lines, table.point_labels[j], table.line_labels)
            state.points[j] = vector
            state.plan.append(PlanStep('point', j, via))
            logger.debug(f"{table.point_labels[j]} = {vector_text(vector)}")
            changed = True
        for i in range(table.k):
            if i in state.lines:
                continue
            known = [j for j in table.lines[i] if j in state.points]
            if len(known) < 2:
                continue
            vector, via = _first_nonzero_cross(known, state.points, table.line_labels[i], table.point_labels)
            state.lines[i] = vector
            state.plan.append(PlanStep('line', i, via))
            logger.debug(f"{table.line_labels[i]}: {line_equation_text(vector)}")
            changed = True

    _record_constraints(state, table)
    _record_inequations(state, table)
    return state


def _point_on_line(line: Vector, t: MultiPoly) -> Vector:
    A, B, C = line
    if not B.is_zero:
        return normalize_vector((t * B, -(A * t + C), B))
    return normalize_vector((-C, t * A, A))


def _line_through_point(point: Vector, t: MultiPoly) -> Vector:
    m0, m1, m2 = point
    zero = MultiPoly.zero()
    pencil = [(zero, m2, -m1), (-m2, zero, m0), (m1, -m0, zero)]
    first, second = [v for v in pencil if not is_zero_vector(v)][:2]
    return normalize_vector(tuple(u + t * v for u, v in zip(first, second)))


def introduce_parameter(state: RealizationState, table: ConfigTable) -> RealizationState:
    """
    Place one stalled element with a fresh parameter and resume propagation.

    A point on a coordinatized line is preferred: the one incident to the most
    uncoordinatized lines. Ties go to the point more of whose uncoordinatized
    lines already carry a coordinatized point, then to label order. It is
    placed at affine position t along its line. Without such a point, a line
    through one coordinatized point is taken from the pencil at that point.

    Returns:
        The same state; unchanged if it was already complete

    Raises:
        ParameterBudgetExceeded: If the four parameters a, b, c, d are used up
        DisconnectedTable: If no stalled element touches the coordinatized part
    """
    if state.is_complete(table):
        return state
    if len(state.params) >= MAX_PARAMETERS:
        raise ParameterBudgetExceeded(
            f"{table.name or '<unnamed>'} needs more than {MAX_PARAMETERS} parameters"
        )
    name = PARAMETERS[len(state.params)]
    t = MultiPoly.variable(name)

    best: Optional[Tuple[Tuple[int, int], int, int]] = None
    for j in range(table.n3):
        if j in state.points:
            continue
        known = [i for i in table.point_lines[j] if i in state.lines]
        if not known:
            continue
        open_lines = [i for i in table.point_lines[j] if i not in state.lines]
        anchored = sum(1 for i in open_lines if any(p in state.points for p in table.lines[i]))
        score = (len(open_lines), anchored)
        if best is None or score > best[0]:
            best = (score, j, known[0])

    if best is not None:
        _, j, line = best
        state.points[j] = _point_on_line(state.lines[line], t)
        state.plan.append(PlanStep('point-parameter', j, (line,), name))
        element = table.point_labels[j]
    else:
        stalled = [
            (i, [j for j in table.lines[i] if j in state.points])
            for i in range(table.k) if i not in state.lines
        ]
        stalled = [(i, known) for i, known in stalled if known]
        if not stalled:
            raise DisconnectedTable(f"{table.name or '<unnamed>'} has elements unreachable from the grid")
        i, known = stalled[0]
        state.lines[i] = _line_through_point(state.points[known[0]], t)
        state.plan.append(PlanStep('line-parameter', i, (known[0],), name))
        element = table.line_labels[i]

    state.params.append(name)
    message = f"{table.name}: fresh parameter {name} at {element}"
    if len(state.params) > 3:
        logger.warning(message)
    else:
        logger.info(message)
    return propagate(state, table)


def realize(table: ConfigTable, hint: Optional[GridHint] = None) -> RealizationState:
    """
    Coordinatize a whole table.

    Args:
        table: Valid configuration table
        hint: Optional grid (y_lines, x_lines)

    Returns:
        Complete state with constraints, inequations and construction plan

    Raises:
        NoGrid, InconsistentIncidence, ParameterBudgetExceeded, DisconnectedTable
    """
    choice = find_grid(table, hint)
    state = propagate(seed_grid(choice), table)
    while not state.is_complete(table):
        introduce_parameter(state, table)
    logger.info(
        f"Realized {table.name}: params {state.params}, "
        f"{len(state.constraints)} constraints, {len(state.inequations)} inequations"
    )
    return state
