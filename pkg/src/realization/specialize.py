"""
Specialization
Replays a construction plan at an algebraic parameter point and reports
every incidence that fails and every coincidence the table does not have.
"""

import logging
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from src.algebra.number_field import FieldElement, NumberField
from src.incidence.table import ConfigTable
from src.realization.realizer import PlanStep, RealizationState, gauge_inequations

logger = logging.getLogger(__name__)

FieldVector = Tuple[FieldElement, FieldElement, FieldElement]


def _cross(u: Sequence[FieldElement], v: Sequence[FieldElement]) -> FieldVector:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _dot(u: Sequence[FieldElement], v: Sequence[FieldElement]) -> FieldElement:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _is_zero(v: Sequence[FieldElement]) -> bool:
    return all(e.is_zero for e in v)


def _field_of(point: Mapping[str, FieldElement]) -> NumberField:
    fields = {value.field for value in point.values()}
    if len(fields) != 1:
        raise ValueError(f"Parameter values must lie in one number field, got {len(fields)}")
    return fields.pop()


def _meet(
    known: Sequence[int],
    coords: Dict[int, FieldVector],
) -> Optional[FieldVector]:
    for first, second in combinations(known, 2):
        vector = _cross(coords[first], coords[second])
        if not _is_zero(vector):
            return vector
    return None


def specialize(
    state: RealizationState,
    table: ConfigTable,
    point: Mapping[str, FieldElement],
) -> List[str]:
    """
    Evaluate the realization at one parameter point.

    Grid lines and parameter placements are evaluated from their symbolic
    coordinates. Every other element is rebuilt from any two coordinatized
    neighbours with a nonzero cross product, so a chart that degenerates at
    the point does not hide a valid arrangement.

    Args:
        state: Complete realization state
        table: The realized table
        point: Value of every parameter in state.params, all in one number field

    Returns:
        Violations in construction order: failed incidences, concurrent line
        triples that are not table points, vanishing grid inequations and
        elements that cannot be rebuilt; empty when the point realizes the table
    """
    field = _field_of(point)
    missing = [name for name in state.params if name not in point]
    if missing:
        raise ValueError(f"No value for parameters {missing}")

    violations: List[str] = []
    for condition in gauge_inequations():
        if field.evaluate(condition.poly, point).is_zero:
            violations.append(condition.reason.replace('!=', '='))

    lines: Dict[int, FieldVector] = {}
    points: Dict[int, FieldVector] = {}
    for step in state.plan:
        _replay(step, state, table, field, point, lines, points, violations)

    for i, on_line in enumerate(table.lines):
        for j in on_line:
            if i in lines and j in points and not _dot(lines[i], points[j]).is_zero:
                violations.append(f"{table.point_labels[j]} not on {table.line_labels[i]}")

    blocks = {frozenset(b) for b in table.point_lines}
    for triple in combinations(sorted(lines), 3):
        if frozenset(triple) in blocks:
            continue
        rows = [lines[i] for i in triple]
        if _dot(rows[0], _cross(rows[1], rows[2])).is_zero:
            labels = ', '.join(table.line_labels[i] for i in triple)
            violations.append(f"{labels} concurrent")

    logger.debug(f"{table.name} at {_point_text(point)}: {len(violations)} violations")
    return violations


def _replay(
    step: PlanStep,
    state: RealizationState,
    table: ConfigTable,
    field: NumberField,
    point: Mapping[str, FieldElement],
    lines: Dict[int, FieldVector],
    points: Dict[int, FieldVector],
    violations: List[str],
):
    if step.kind in ('grid-line', 'line-parameter'):
        lines[step.index] = tuple(field.evaluate(p, point) for p in state.lines[step.index])
        if _is_zero(lines[step.index]):
            violations.append(f"{table.line_labels[step.index]} degenerates")
            del lines[step.index]
    elif step.kind in ('grid-point', 'point-parameter'):
        points[step.index] = tuple(field.evaluate(p, point) for p in state.points[step.index])
        if _is_zero(points[step.index]):
            violations.append(f"{table.point_labels[step.index]} degenerates")
            del points[step.index]
    elif step.kind == 'point':
        known = [i for i in table.point_lines[step.index] if i in lines]
        vector = _meet(known, lines)
        if vector is None:
            violations.append(f"{table.point_labels[step.index]} undetermined: lines coincide")
        else:
            points[step.index] = vector
    elif step.kind == 'line':
        known = [j for j in table.lines[step.index] if j in points]
        vector = _meet(known, points)
        if vector is None:
            violations.append(f"{table.line_labels[step.index]} undetermined: points coincide")
        else:
            lines[step.index] = vector
    else:
        raise ValueError(f"Unknown plan step {step.kind}")


def _point_text(point: Mapping[str, FieldElement]) -> str:
    return ', '.join(f"{name}={value}" for name, value in sorted(point.items()))
