"""
Constraint Systems
Polynomials that must vanish, polynomials that must not, and the
substitutions made while reducing them.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

from src.algebra.operations import substitute_linear
from src.algebra.polynomial import PARAMETERS, MultiPoly, canonical_texts, sort_key
from src.realization.realizer import RealizationState

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Substitution:
    """var = num / den, with den nonzero on the branch that made it."""

    var: str
    num: MultiPoly
    den: MultiPoly

    def to_text(self) -> str:
        if self.den.is_constant:
            return f"{self.var} = {(self.num * (1 / self.den.constant_value())).to_text()}"
        return f"{self.var} = ({self.num.to_text()})/({self.den.to_text()})"


def _unique(polys: Iterable[MultiPoly]) -> List[MultiPoly]:
    seen = set()
    result = []
    for p in polys:
        p = p.normalized()
        if p not in seen:
            seen.add(p)
            result.append(p)
    return result


@dataclass(frozen=True)
class ConstraintSystem:
    """
    Polynomial system of one realization, or of one branch of it.

    Attributes:
        params: Parameters of the realization, in order
        constraints: Normalized, deduplicated, sorted canonically; zero dropped
        inequations: Normalized and deduplicated; nonzero constants dropped, a
            zero inequation kept so the branch is recognized as empty
        substitutions: Parameters eliminated so far, in the order made
        checks: Constraints replaced by a resultant, rewritten through later
            substitutions; every solution must satisfy them too
    """

    params: Tuple[str, ...]
    constraints: Tuple[MultiPoly, ...]
    inequations: Tuple[MultiPoly, ...]
    substitutions: Tuple[Substitution, ...] = ()
    checks: Tuple[MultiPoly, ...] = ()

    @classmethod
    def make(
        cls,
        params: Iterable[str],
        constraints: Iterable[MultiPoly],
        inequations: Iterable[MultiPoly],
        substitutions: Iterable[Substitution] = (),
        checks: Iterable[MultiPoly] = (),
    ) -> 'ConstraintSystem':
        params = tuple(params)
        unknown = [p for p in params if p not in PARAMETERS]
        if unknown:
            raise ValueError(f"Unknown parameters {unknown}, expected names from {PARAMETERS}")
        constraints = sorted(_unique(p for p in constraints if not p.is_zero), key=sort_key)
        inequations = _unique(q for q in inequations if q.is_zero or not q.is_constant)
        return cls(
            params=params,
            constraints=tuple(constraints),
            inequations=tuple(inequations),
            substitutions=tuple(substitutions),
            checks=tuple(_unique(p for p in checks if not p.is_zero)),
        )

    @classmethod
    def from_state(cls, state: RealizationState) -> 'ConstraintSystem':
        return cls.make(state.params, state.constraint_polys(), state.inequation_polys())

    @property
    def bound(self) -> Tuple[str, ...]:
        return tuple(s.var for s in self.substitutions)

    @property
    def free_params(self) -> Tuple[str, ...]:
        bound = set(self.bound)
        return tuple(p for p in self.params if p not in bound)

    @property
    def dimension(self) -> int:
        """Free parameters minus constraints; exact once the system is triangular."""
        return len(self.free_params) - len(self.constraints)

    def with_constraints(self, constraints: Iterable[MultiPoly]) -> 'ConstraintSystem':
        return ConstraintSystem.make(self.params, constraints, self.inequations, self.substitutions, self.checks)

    def with_inequation(self, poly: MultiPoly) -> 'ConstraintSystem':
        return ConstraintSystem.make(
            self.params, self.constraints, self.inequations + (poly,), self.substitutions, self.checks
        )

    def substitute(self, var: str, num: MultiPoly, den: MultiPoly, drop: MultiPoly) -> 'ConstraintSystem':
        """
        Eliminate var = num/den everywhere.

        Args:
            var: Free parameter to eliminate
            num: Numerator, free of var
            den: Denominator, free of var; recorded as an inequation when not constant
            drop: The constraint that defined the substitution

        Returns:
            New system with denominators cleared
        """
        if var not in self.free_params:
            raise ValueError(f"{var} is not a free parameter of the system")
        rewrite = lambda p: substitute_linear(p, var, num, den)
        inequations = [rewrite(q) for q in self.inequations]
        if not den.is_constant:
            inequations.append(den)
        return ConstraintSystem.make(
            self.params,
            [rewrite(p) for p in self.constraints if p != drop],
            inequations,
            self.substitutions + (Substitution(var, num, den),),
            [rewrite(p) for p in self.checks],
        )

    def replace_constraint(self, old: MultiPoly, new: Iterable[MultiPoly]) -> 'ConstraintSystem':
        kept = [p for p in self.constraints if p != old]
        return self.with_constraints(kept + list(new))

    def constraint_texts(self) -> List[str]:
        return canonical_texts(self.constraints)

    def to_dict(self) -> Dict:
        return {
            'params': list(self.params),
            'free': list(self.free_params),
            'constraints': self.constraint_texts(),
            'substitutions': [s.to_text() for s in self.substitutions],
            'inequations': len(self.inequations),
        }

    def __str__(self) -> str:
        subs = '; '.join(s.to_text() for s in self.substitutions)
        return f"{{{', '.join(self.constraint_texts())}}}" + (f" with {subs}" if subs else '')


def main_variable(p: MultiPoly) -> str:
    """Latest parameter occurring in p."""
    if p.is_constant:
        raise ValueError(f"Constant {p} has no main variable")
    return max(p.variables, key=PARAMETERS.index)
