"""
Moduli Classifier
Solves triangular branches over number fields, removes degenerate roots and
decides the verdict: empty, finitely many points, or a positive-dimensional
family, with the potential Zariski flag.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import sympy
from sympy import Dummy, Poly, QQ

from src.algebra.number_field import (
    FieldElement,
    NumberField,
    minimal_polynomial,
    poly_gcd,
    root_of_linear,
)
from src.algebra.operations import Irreducibility, absolutely_irreducible, sturm_real_roots
from src.algebra.polynomial import PARAMETERS, MultiPoly, UniPoly, symbol
from src.incidence.table import ConfigTable
from src.moduli.system import ConstraintSystem, main_variable
from src.moduli.triangularize import DEFAULT_MAX_DEGREE, triangularize
from src.realization.realizer import RealizationState
from src.realization.specialize import specialize

logger = logging.getLogger(__name__)

MAX_SEPARATING_SHIFT = 10


class Verdict(str, Enum):
    EMPTY = 'Empty'
    ZERO_DIM = 'ZeroDim'
    POSITIVE_DIM = 'PositiveDim'


@dataclass
class AlgebraicPoint:
    """
    One Galois orbit of solutions.

    Attributes:
        field: QQ[x]/(m); each embedding of the field is one complex point
        coordinates: Value of every parameter in the field
    """

    field: NumberField
    coordinates: Dict[str, FieldElement]

    @property
    def size(self) -> int:
        return self.field.degree

    def real_size(self) -> int:
        return sturm_real_roots(self.field.modulus)

    def minimal_polynomials(self) -> Dict[str, UniPoly]:
        return {name: minimal_polynomial(value, name) for name, value in self.coordinates.items()}

    def key(self) -> Tuple[str, ...]:
        """Identifies the orbit: coordinate minimal polynomials plus one generic combination."""
        names = sorted(self.coordinates)
        combination = reduce(
            lambda acc, item: acc + (item[0] + 2) * self.coordinates[item[1]],
            enumerate(names),
            self.field.zero(),
        )
        texts = [minimal_polynomial(self.coordinates[name], name).to_text() for name in names]
        return tuple(texts) + (minimal_polynomial(combination, 'a').to_text(),)

    def __str__(self) -> str:
        values = ', '.join(f"{name}={value}" for name, value in sorted(self.coordinates.items()))
        return f"({values}) over {self.field}"


@dataclass
class ModuliReport:
    """
    Classification of one moduli space.

    minpoly is the eliminant of the variable solved first; eliminants has one
    squarefree polynomial per parameter. Counts are over C after degenerate
    roots are removed. caveat marks verdicts about the configuration's
    moduli space that do not settle the arrangement's.
    """

    verdict: Verdict
    eliminants: Dict[str, str] = field(default_factory=dict)
    minpoly: Optional[str] = None
    point_count: int = 0
    real_count: int = 0
    orbit_count: int = 0
    dimension: Optional[int] = None
    irreducible: Optional[str] = None
    conjugate_exchanged: Optional[bool] = None
    zariski_flag: bool = False
    caveat: bool = False
    degeneracy_log: List[str] = field(default_factory=list)
    constraints: List[str] = field(default_factory=list)
    branches: int = 0
    roots: List[AlgebraicPoint] = field(default_factory=list, repr=False)

    def to_dict(self) -> Dict:
        return {
            'verdict': self.verdict.value,
            'minpoly': self.minpoly,
            'eliminants': dict(sorted(self.eliminants.items())),
            'point_count': self.point_count,
            'real_count': self.real_count,
            'orbit_count': self.orbit_count,
            'dimension': self.dimension,
            'irreducible': self.irreducible,
            'conjugate_exchanged': self.conjugate_exchanged,
            'zariski_flag': self.zariski_flag,
            'caveat': self.caveat,
            'constraints': list(self.constraints),
            'branches': self.branches,
            'degeneracy_log': list(self.degeneracy_log),
        }


Verifier = Callable[[AlgebraicPoint], List[str]]


# --- solving over number fields ----------------------------------------------

def _horner(field_: NumberField, coeffs_high_first: Sequence, x: FieldElement) -> FieldElement:
    total = field_.zero()
    for c in coeffs_high_first:
        total = total * x + field_.element(sympy.Rational(c))
    return total


def _rebase(element: FieldElement, field_: NumberField, image: FieldElement) -> FieldElement:
    """Map an element of QQ[u]/(m) into field_ by sending u to image."""
    return _horner(field_, element.rep.all_coeffs(), image)


def _extend_field(
    base: NumberField,
    coords: Dict[str, FieldElement],
    coeffs: List[FieldElement],
    var: str,
) -> Optional[List[Tuple[NumberField, Dict[str, FieldElement]]]]:
    """
    Adjoin the roots of a polynomial over base by a primitive element.

    The new generator is w = var + s*u for the first shift s that separates,
    u being the generator of base. Each irreducible factor of the norm
    res_u(m(u), g(u, w - s*u)) gives one extension field.

    Returns:
        (field, coordinates) per factor, or None if no shift up to the limit separates
    """
    u = base.modulus.symbol
    v, w = Dummy('v'), Dummy('w')
    g = sum(c.rep.as_expr() * v ** k for k, c in enumerate(coeffs))
    m = base.modulus.to_poly().as_expr()
    target = symbol(var)

    for s in range(1, MAX_SEPARATING_SHIFT + 1):
        shifted = sympy.expand(g.subs(v, w - s * u))
        norm = Poly(sympy.resultant(m, shifted, u), w, domain=QQ)
        if norm.degree() < 1 or norm.gcd(norm.diff(w)).degree() > 0:
            continue
        shifted_in_u = Poly(shifted, u)
        m_in_u = Poly(m, u)
        results = []
        for factor, _ in norm.factor_list()[1]:
            ext = NumberField(UniPoly.from_poly(Poly(factor.as_expr().subs(w, target), target, domain=QQ), var).primitive())
            gen = ext.generator()
            f_coeffs = [ext.element(sympy.Rational(c)) for c in reversed(m_in_u.all_coeffs())]
            g_coeffs = [_horner(ext, Poly(c, w).all_coeffs(), gen) for c in reversed(shifted_in_u.all_coeffs())]
            common = poly_gcd(f_coeffs, g_coeffs)
            if len(common) != 2:
                break
            image = root_of_linear(common)
            new_coords = {name: _rebase(value, ext, image) for name, value in coords.items()}
            new_coords[var] = gen - s * image
            results.append((ext, new_coords))
        else:
            return results
    return None


def _solve_branch(
    branch: ConstraintSystem,
    journal: List[str],
    families: Optional[List[AlgebraicPoint]] = None,
) -> List[AlgebraicPoint]:
    """
    All orbits of a zero-dimensional triangular branch, in its free parameters.

    A triangular polynomial that vanishes identically at a partial root leaves
    its main variable free there. That partial root is appended to families
    instead of being solved further.
    """
    ordered = sorted(branch.constraints, key=lambda p: PARAMETERS.index(main_variable(p)))
    if not ordered:
        rationals = NumberField(UniPoly(PARAMETERS[0], (0, 1)))
        return [AlgebraicPoint(rationals, {})]
    first = ordered[0]
    v0 = main_variable(first)
    base = NumberField(UniPoly.from_multipoly(first, v0).primitive())
    fields = [(base, {v0: base.generator()})]

    for p in ordered[1:]:
        var = main_variable(p)
        extended = []
        for field_, coords in fields:
            coeffs = field_.univariate(p, var, coords)
            if not coeffs:
                journal.append(f"{p} vanishes identically over {field_}; {var} undetermined")
                if families is not None:
                    families.append(AlgebraicPoint(field_, coords))
            elif len(coeffs) == 1:
                logger.debug(f"{p} has no root over {field_}")
            elif len(coeffs) == 2:
                extended.append((field_, {**coords, var: root_of_linear(coeffs)}))
            else:
                pieces = _extend_field(field_, coords, coeffs, var)
                if pieces is None:
                    journal.append(f"no separating element for {p} over {field_}")
                else:
                    extended.extend(pieces)
        fields = extended
    return [AlgebraicPoint(f, c) for f, c in fields]


def _back_substitute(
    branch: ConstraintSystem,
    point: AlgebraicPoint,
    journal: List[str],
) -> Optional[AlgebraicPoint]:
    coords = dict(point.coordinates)
    for sub in reversed(branch.substitutions):
        den = point.field.evaluate(sub.den, coords)
        if den.is_zero:
            journal.append(f"removed root {point}: denominator {sub.den} of {sub.var} vanishes")
            return None
        coords[sub.var] = point.field.evaluate(sub.num, coords) / den
    return AlgebraicPoint(point.field, coords)


def _inequation_violations(system: ConstraintSystem, point: AlgebraicPoint) -> List[str]:
    return [
        f"{q} = 0" for q in system.inequations
        if point.field.evaluate(q, point.coordinates).is_zero
    ]


def _eliminant_texts(points: Sequence[AlgebraicPoint], params: Sequence[str]) -> Dict[str, str]:
    result = {}
    for name in params:
        factors = {p.minimal_polynomials()[name].to_multipoly() for p in points}
        product = reduce(lambda acc, f: acc * f, sorted(factors, key=lambda f: f.to_text()), MultiPoly.one())
        result[name] = product.squarefree().to_text()
    return result


# --- verdicts -------------------------------------------------------------------

def _primary_variable(branches: Sequence[ConstraintSystem]) -> Optional[str]:
    """Variable solved first: lowest main variable, else the first one substituted."""
    constraints = [p for b in branches for p in b.constraints]
    if constraints:
        return min((main_variable(p) for p in constraints), key=PARAMETERS.index)
    return next((b.substitutions[0].var for b in branches if b.substitutions), None)


def _zero_dim(
    system: ConstraintSystem,
    branches: List[ConstraintSystem],
    journal: List[str],
    verifier: Optional[Verifier],
) -> ModuliReport:
    points: Dict[Tuple[str, ...], AlgebraicPoint] = {}
    families: List[AlgebraicPoint] = []
    for branch in branches:
        for orbit in _solve_branch(branch, journal, families):
            point = _back_substitute(branch, orbit, journal)
            if point is None:
                continue
            failed = [p for p in system.constraints if not point.field.evaluate(p, point.coordinates).is_zero]
            if failed:
                journal.append(f"removed spurious root {point}: {failed[0]} does not vanish")
                continue
            violations = verifier(point) if verifier else _inequation_violations(system, point)
            if violations:
                journal.append(f"removed root {point}: {', '.join(violations)}")
                continue
            points.setdefault(point.key(), point)

    if families:
        return _embedded_family(branches, families, journal)

    roots = list(points.values())
    if not roots:
        return ModuliReport(verdict=Verdict.EMPTY, degeneracy_log=journal, branches=len(branches))

    point_count = sum(p.size for p in roots)
    real_count = sum(p.real_size() for p in roots)
    complex_count = point_count - real_count
    assert complex_count % 2 == 0, f"odd number of non-real points: {complex_count}"
    orbit_count = real_count + complex_count // 2

    primary = _primary_variable(branches)
    eliminants = _eliminant_texts(roots, system.params)
    return ModuliReport(
        verdict=Verdict.ZERO_DIM,
        eliminants=eliminants,
        minpoly=eliminants.get(primary),
        point_count=point_count,
        real_count=real_count,
        orbit_count=orbit_count,
        dimension=0,
        irreducible=(Irreducibility.IRREDUCIBLE if orbit_count == 1 else Irreducibility.REDUCIBLE).value,
        zariski_flag=orbit_count >= 2,
        caveat=orbit_count >= 2,
        degeneracy_log=journal,
        constraints=branches[0].constraint_texts(),
        branches=len(branches),
        roots=roots,
    )


def _embedded_family(
    branches: List[ConstraintSystem],
    families: List[AlgebraicPoint],
    journal: List[str],
) -> ModuliReport:
    """
    A curve hiding inside a branch counted as zero-dimensional.

    Over each partial root in families one variable stays free, so the moduli
    space has a component of dimension at least one. Its irreducibility and
    degenerations are not decided, hence the caveat.
    """
    for point in families:
        journal.append(f"positive-dimensional component over {point}")
    logger.warning(f"{len(families)} partial roots leave a variable free; reporting a family")
    return ModuliReport(
        verdict=Verdict.POSITIVE_DIM,
        dimension=1,
        irreducible=Irreducibility.UNKNOWN.value,
        zariski_flag=False,
        caveat=True,
        degeneracy_log=journal,
        constraints=branches[0].constraint_texts(),
        branches=len(branches),
    )


def _positive_dim(branches: List[ConstraintSystem], journal: List[str]) -> ModuliReport:
    top = max(b.dimension for b in branches)
    tops = [b for b in branches if b.dimension == top]
    for b in branches:
        if b.dimension < top:
            journal.append(f"lower-dimensional branch {b} ignored")

    exchanged = None
    if len(tops) > 1:
        status = Irreducibility.REDUCIBLE
        zariski = True
    elif not tops[0].constraints:
        status = Irreducibility.IRREDUCIBLE
        zariski = False
    elif len(tops[0].constraints) == 1:
        result = absolutely_irreducible(tops[0].constraints[0])
        status = result.status
        exchanged = result.conjugate_exchanged
        zariski = status is Irreducibility.REDUCIBLE and not exchanged
    else:
        status = Irreducibility.UNKNOWN
        zariski = False

    return ModuliReport(
        verdict=Verdict.POSITIVE_DIM,
        dimension=top,
        irreducible=status.value,
        conjugate_exchanged=exchanged,
        zariski_flag=zariski,
        caveat=status is not Irreducibility.IRREDUCIBLE,
        degeneracy_log=journal,
        constraints=tops[0].constraint_texts(),
        branches=len(branches),
    )


def classify(
    system: ConstraintSystem,
    max_degree: int = DEFAULT_MAX_DEGREE,
    verifier: Optional[Verifier] = None,
) -> ModuliReport:
    """
    Decide the moduli space of a constraint system.

    The system is triangularized first. Without a positive-dimensional
    branch, every root is computed over its own number field, back-substituted
    and checked against the original constraints; roots where an inequation
    vanishes are removed. Conjugation orbits are real roots plus pairs of
    non-real ones, and two or more orbits set the Zariski flag.

    Args:
        system: Untriangularized system, e.g. ConstraintSystem.from_state(state)
        max_degree: Resultant degree cap
        verifier: Optional check replacing the polynomial inequation test,
            returning the violations at a root (see check_degenerations)

    Returns:
        ModuliReport

    Raises:
        EliminationOverflow: If elimination exceeds max_degree
    """
    journal: List[str] = []
    branches = triangularize(system, max_degree, journal)
    if not branches:
        report = ModuliReport(verdict=Verdict.EMPTY, degeneracy_log=journal)
    elif max(b.dimension for b in branches) > 0:
        report = _positive_dim(branches, journal)
    else:
        report = _zero_dim(system, branches, journal, verifier)
    logger.debug(f"{system}: {report.verdict.value}")
    return report


def check_degenerations(
    state: RealizationState,
    table: ConfigTable,
    root: AlgebraicPoint,
) -> List[str]:
    """
    Violated inequations of a realization at an algebraic root.

    The construction is replayed over the root's number field, so a chart
    that degenerates at the root is rebuilt from other incident elements.

    Args:
        state: Complete realization state
        table: The realized table
        root: Values of every parameter of the state

    Returns:
        Violations naming the failed incidence, the concurrent line triple or
        the grid inequation; empty when the root gives a valid arrangement
    """
    return specialize(state, table, root.coordinates)


def root_from_values(values: Mapping[str, FieldElement]) -> AlgebraicPoint:
    """Wrap coordinates from one number field as an AlgebraicPoint."""
    fields = {value.field for value in values.values()}
    if len(fields) != 1:
        raise ValueError(f"Coordinates must lie in one number field, got {len(fields)}")
    return AlgebraicPoint(fields.pop(), dict(values))
