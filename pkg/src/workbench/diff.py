"""
Expected Data Comparison
Compares a moduli report with the data transcribed for an arrangement:
verdict and flags, the squarefree eliminant, and the solution set of the
published constraint list.
"""

import logging
from functools import reduce
from typing import Dict, List, Optional, Sequence

import numpy as np
from sympy import Rational

from src.algebra.operations import squarefree_part, sturm_real_roots, substitute_linear
from src.algebra.polynomial import MultiPoly, UniPoly, parse_poly
from src.moduli.classifier import AlgebraicPoint, ModuliReport, Verdict, classify
from src.moduli.system import ConstraintSystem
from src.moduli.triangularize import DEFAULT_MAX_DEGREE, triangularize
from src.workbench.registry import RegistryEntry

logger = logging.getLogger(__name__)

SAMPLE_RANGE = 1000
DEFAULT_SEED = 20240101


def _compare(mismatches: List[str], label: str, expected, measured):
    if expected != measured:
        mismatches.append(f"{label}: expected {expected}, got {measured}")


def _renamed(text: str, var: str) -> str:
    p = UniPoly.from_multipoly(parse_poly(text))
    return UniPoly(var, p.coefficients).to_text()


def _eliminant_mismatches(report: ModuliReport, expected: Dict, by_text: bool) -> List[str]:
    """
    Degree and root counts always; the text itself only when the gauge is known.

    Without a known gauge the eliminant matches if some measured eliminant
    agrees after renaming its variable.
    """
    mismatches: List[str] = []
    var = expected['eliminant']['var']
    target = squarefree_part(UniPoly.parse(expected['eliminant']['poly'], var))
    real = sturm_real_roots(target)
    counts = {
        'point_count': target.degree(),
        'real_count': expected.get('real_count', real),
        'orbit_count': expected.get('orbit_count', real + (target.degree() - real) // 2),
    }
    for key, value in counts.items():
        _compare(mismatches, key, value, getattr(report, key))

    if by_text:
        _compare(mismatches, f"eliminant in {var}", target.to_text(), report.eliminants.get(var))
    elif not any(_renamed(text, var) == target.to_text() for text in report.eliminants.values()):
        mismatches.append(f"eliminant: expected {target} in some variable, got {report.eliminants}")
    return mismatches


def _branch_points(branch: ConstraintSystem, count: int, rng: np.random.Generator) -> List[Dict[str, Rational]]:
    """Random rational points of a branch without remaining constraints, off its inequations."""
    points: List[Dict[str, Rational]] = []
    attempts = 0
    while len(points) < count and attempts < 4 * count:
        attempts += 1
        draws = rng.integers(-SAMPLE_RANGE, SAMPLE_RANGE + 1, size=len(branch.free_params))
        values = {name: Rational(int(v)) for name, v in zip(branch.free_params, draws)}
        for sub in reversed(branch.substitutions):
            den = sub.den.evaluate(values)
            if den == 0:
                break
            values[sub.var] = sub.num.evaluate(values) / den
        else:
            if all(q.evaluate(values) != 0 for q in branch.inequations):
                points.append(values)
    return points


def _vanishes_on(
    branch: ConstraintSystem,
    p: MultiPoly,
    samples: int,
    rng: np.random.Generator,
) -> Optional[bool]:
    """
    Whether p vanishes on the branch's solution set.

    None when the branch keeps more than one constraint.
    """
    if not branch.constraints:
        return all(p.evaluate(point) == 0 for point in _branch_points(branch, samples, rng))
    if len(branch.constraints) > 1:
        return None
    reduced = reduce(lambda q, s: substitute_linear(q, s.var, s.num, s.den), branch.substitutions, p)
    return branch.constraints[0].divides(reduced)


def _top_branches(system: ConstraintSystem, max_degree: int) -> List[ConstraintSystem]:
    branches = triangularize(system, max_degree)
    if not branches:
        return []
    top = max(b.dimension for b in branches)
    return [b for b in branches if b.dimension == top]


def _root_mismatches(roots: Sequence[AlgebraicPoint], polys: Sequence[MultiPoly], label: str) -> List[str]:
    return [
        f"{label}: {p} does not vanish at {root}"
        for root in roots for p in polys
        if not root.field.evaluate(p, root.coordinates).is_zero
    ]


def compare_solution_sets(
    report: ModuliReport,
    system: ConstraintSystem,
    constraints: Sequence[str],
    samples: int = 200,
    seed: int = DEFAULT_SEED,
    max_degree: int = DEFAULT_MAX_DEGREE,
) -> List[str]:
    """
    Compare the solution set of a measured system with a published constraint list.

    Both lists share the measured inequations. Finite solution sets are
    compared root by root over their number fields. For families, each side's
    constraints must vanish on the other side's top-dimensional branches:
    sampled at random rational points when a branch is rationally
    parametrized, by exact division when one constraint remains.

    Args:
        report: Classification of system
        system: Measured constraint system
        constraints: Published constraints in canonical text
        samples: Points sampled per parametrized branch
        seed: Sampling seed
        max_degree: Resultant degree cap

    Returns:
        Mismatch messages; empty when the solution sets agree
    """
    published = [parse_poly(text) for text in constraints]
    foreign = sorted({v for p in published for v in p.variables} - set(system.params))
    if foreign:
        return [f"constraints: parameters {foreign} do not occur in the realization {list(system.params)}"]
    reference = ConstraintSystem.make(system.params, published, system.inequations)

    if report.verdict is Verdict.ZERO_DIM:
        other = classify(reference, max_degree)
        if other.verdict is not Verdict.ZERO_DIM:
            return [f"constraints: published system is {other.verdict.value}, measured ZeroDim"]
        return (
            _root_mismatches(report.roots, published, 'published constraint')
            + _root_mismatches(other.roots, system.constraints, 'measured constraint')
        )

    rng = np.random.default_rng(seed)
    measured_top = _top_branches(system, max_degree)
    published_top = _top_branches(reference, max_degree)
    if not published_top:
        return ["constraints: published system has no admissible solution"]
    if measured_top and published_top[0].dimension != measured_top[0].dimension:
        return [
            f"constraints: published dimension {published_top[0].dimension}, "
            f"measured {measured_top[0].dimension}"
        ]

    mismatches = []
    for branches, polys, label in (
        (measured_top, published, 'published constraint'),
        (published_top, system.constraints, 'measured constraint'),
    ):
        for branch in branches:
            for p in polys:
                verdict = _vanishes_on(branch, p, samples, rng)
                if verdict is None:
                    logger.debug(f"{branch} keeps several constraints; {p} not compared")
                elif not verdict:
                    mismatches.append(f"{label}: {p} does not vanish on {branch}")
    return mismatches


def diff_expected(
    report: ModuliReport,
    entry: RegistryEntry,
    system: Optional[ConstraintSystem] = None,
    samples: int = 200,
    seed: int = DEFAULT_SEED,
    max_degree: int = DEFAULT_MAX_DEGREE,
) -> List[str]:
    """
    Mismatches between a report and an entry's expected data.

    Args:
        report: Classification of the entry's realization
        entry: Registry entry; nothing is compared without expected data
        system: Measured constraint system, needed to compare constraint lists
        samples: Points sampled per parametrized branch
        seed: Sampling seed
        max_degree: Resultant degree cap

    Returns:
        One message per disagreeing field
    """
    expected = entry.expected
    if not expected:
        return []
    mismatches: List[str] = []
    if 'geometric' in expected:
        _compare(mismatches, 'geometric', expected['geometric'], report.verdict is not Verdict.EMPTY)
    if 'zariski' in expected:
        _compare(mismatches, 'zariski', expected['zariski'], report.zariski_flag)
    if 'verdict' in expected:
        _compare(mismatches, 'verdict', expected['verdict'], report.verdict.value)
    if 'dimension' in expected and report.verdict is not Verdict.EMPTY:
        _compare(mismatches, 'dimension', expected['dimension'], report.dimension)

    if 'eliminant' in expected:
        if report.verdict is Verdict.ZERO_DIM:
            mismatches.extend(_eliminant_mismatches(report, expected, by_text=entry.grid_hint is not None))
        else:
            mismatches.append(f"eliminant {expected['eliminant']['poly']}: no finite solution set ({report.verdict.value})")
    else:
        for key in ('real_count', 'orbit_count'):
            if key in expected:
                _compare(mismatches, key, expected[key], getattr(report, key))

    if expected.get('constraints') and system is not None and report.verdict is not Verdict.EMPTY:
        if entry.grid_hint is None:
            logger.debug(f"{entry.name}: constraints need the published gauge, not compared")
        else:
            mismatches.extend(
                compare_solution_sets(report, system, expected['constraints'], samples, seed, max_degree)
            )

    for message in mismatches:
        logger.debug(f"{entry.name}: {message}")
    return mismatches
