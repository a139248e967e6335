"""
Triangularization
Reduces a constraint system to triangular branches by factor splitting,
linear substitution and pairwise resultants.
"""

import logging
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple

from src.algebra.operations import resultant
from src.algebra.polynomial import PARAMETERS, MultiPoly, sort_key
from src.moduli.errors import EliminationOverflow
from src.moduli.system import ConstraintSystem, main_variable

logger = logging.getLogger(__name__)

DEFAULT_MAX_DEGREE = 12


def _divides_some(f: MultiPoly, inequations: Sequence[MultiPoly]) -> bool:
    return any(not q.is_zero and f.divides(q) for q in inequations)


def _strip(
    system: ConstraintSystem,
    journal: List[str],
) -> Optional[Tuple[ConstraintSystem, Dict[MultiPoly, List[MultiPoly]]]]:
    """
    Drop factors that vanish only on the degenerate locus.

    Returns:
        (system, factors of each remaining constraint), or None when the
        branch is empty
    """
    for q in system.inequations:
        if q.is_zero:
            journal.append(f"empty branch {system}: an inequation vanishes identically")
            return None

    kept_constraints: List[MultiPoly] = []
    factors: Dict[MultiPoly, List[MultiPoly]] = {}
    for p in system.constraints:
        if p.is_constant:
            journal.append(f"empty branch {system}: constraint {p} is a nonzero constant")
            return None
        kept = []
        for f, _ in p.factor():
            if _divides_some(f, system.inequations):
                journal.append(f"discarded factor {f} of {p}: vanishes only where an inequation does")
            else:
                kept.append(f)
        if not kept:
            journal.append(f"empty branch {system}: {p} vanishes only where an inequation does")
            return None
        q = reduce(lambda acc, f: acc * f, kept, MultiPoly.one()).normalized()
        kept_constraints.append(q)
        factors[q] = kept

    stripped = system.with_constraints(kept_constraints)
    return stripped, factors


def _linear_candidates(system: ConstraintSystem) -> List[Tuple]:
    candidates = []
    for p in system.constraints:
        for var in p.variables:
            if p.degree(var) != 1:
                continue
            beta, alpha = p.coefficients_in(var)
            if alpha.is_constant:
                rank = 0
            elif all(_divides_some(f, system.inequations) for f, _ in alpha.factor()):
                rank = 1
            else:
                rank = 2
            candidates.append((rank, -PARAMETERS.index(var), sort_key(p), p, var, alpha, beta))
    return candidates


def _linear_step(system: ConstraintSystem) -> Optional[List[ConstraintSystem]]:
    """
    Substitute one constraint linear in a parameter.

    Constant or inequation-protected leading coefficients come first, then
    later parameters, so a, b survive as long as possible. An unprotected
    coefficient alpha splits into alpha != 0 and alpha = beta = 0.
    """
    candidates = _linear_candidates(system)
    if not candidates:
        return None
    rank, _, _, p, var, alpha, beta = min(candidates, key=lambda c: c[:3])
    num = -beta
    logger.debug(f"{var} = ({num})/({alpha}) from {p}")
    if rank < 2:
        return [system.substitute(var, num, alpha, p)]
    nonzero = system.with_inequation(alpha).substitute(var, num, alpha, p)
    vanishing = system.replace_constraint(p, [alpha, beta])
    logger.debug(f"Split on {alpha} for {var}")
    return [nonzero, vanishing]


def _resultant_step(system: ConstraintSystem, max_degree: int, journal: List[str]) -> Optional[ConstraintSystem]:
    """Eliminate the main variable shared by two constraints, latest variable first."""
    groups: Dict[str, List[MultiPoly]] = {}
    for p in system.constraints:
        groups.setdefault(main_variable(p), []).append(p)
    for var in reversed(PARAMETERS):
        group = groups.get(var, [])
        if len(group) < 2:
            continue
        f, g = sorted(group, key=lambda p: (p.degree(var), sort_key(p)))[:2]
        r = resultant(f, g, var)
        if r.is_zero:
            journal.append(f"dropped {g}: shares a component with {f}")
            return system.replace_constraint(g, [])
        if r.max_degree() > max_degree:
            raise EliminationOverflow(var, r.max_degree(), max_degree)
        logger.debug(f"res_{var}({f}, {g}) = {r}")
        replaced = system.replace_constraint(g, [r])
        return ConstraintSystem.make(
            replaced.params, replaced.constraints, replaced.inequations,
            replaced.substitutions, replaced.checks + (g,),
        )
    return None


def _reduce(system: ConstraintSystem, max_degree: int, journal: List[str]) -> List[ConstraintSystem]:
    stripped = _strip(system, journal)
    if stripped is None:
        return []
    system, factors = stripped

    for p in system.constraints:
        if len(factors.get(p, [p])) > 1:
            branches = []
            for f in factors[p]:
                logger.debug(f"Branch {f} of {p}")
                branches.extend(_reduce(system.replace_constraint(p, [f]), max_degree, journal))
            return branches

    children = _linear_step(system)
    if children is not None:
        branches = []
        for child in children:
            branches.extend(_reduce(child, max_degree, journal))
        return branches

    child = _resultant_step(system, max_degree, journal)
    if child is not None:
        return _reduce(child, max_degree, journal)
    return [system]


def _subsume(branches: List[ConstraintSystem], journal: List[str]) -> List[ConstraintSystem]:
    unique: Dict[Tuple, ConstraintSystem] = {}
    for branch in branches:
        unique.setdefault((branch.substitutions, branch.constraints), branch)
    result = []
    for branch in unique.values():
        larger = set(branch.constraints)
        if any(
            other is not branch
            and other.substitutions == branch.substitutions
            and set(other.constraints) < larger
            for other in unique.values()
        ):
            journal.append(f"branch {branch} lies inside a larger branch")
            continue
        result.append(branch)
    return result


def triangularize(
    system: ConstraintSystem,
    max_degree: int = DEFAULT_MAX_DEGREE,
    journal: Optional[List[str]] = None,
) -> List[ConstraintSystem]:
    """
    Reduce a system to triangular branches.

    Constraints are factored over QQ and the system splits by factor; factors
    dividing an inequation are discarded. A constraint linear in a parameter
    is substituted, otherwise two constraints with the same main variable are
    replaced by one of them and their resultant. In every returned branch the
    constraints have pairwise distinct main variables.

    Args:
        system: Input system in at most four parameters
        max_degree: Cap on the degree of a resultant in any one variable
        journal: Optional list collecting discarded factors and empty branches

    Returns:
        Triangular branches; empty when the system has no admissible solution

    Raises:
        EliminationOverflow: If a resultant exceeds max_degree
    """
    if len(system.params) > len(PARAMETERS):
        raise ValueError(f"At most {len(PARAMETERS)} parameters, got {len(system.params)}")
    journal = journal if journal is not None else []
    branches = _subsume(_reduce(system, max_degree, journal), journal)
    logger.debug(f"{system}: {len(branches)} triangular branches")
    return branches
