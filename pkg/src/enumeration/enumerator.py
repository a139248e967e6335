"""
Enumerator
Generates all configuration tables with k lines and n3 triple points up to
lattice isomorphism, one line census at a time.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple, Union

import numpy as np
import yaml

from src.enumeration.errors import CountMismatch, InfeasibleCensus
from src.incidence.canonical import Automorphism, CanonicalForm, canonical_form, canonical_labeling, canonical_table
from src.incidence.census import census_violations, line_census, validate
from src.incidence.table import ConfigTable, format_table

logger = logging.getLogger(__name__)

Block = Tuple[int, ...]
Pair = Tuple[int, int]


def _pair(x: int, y: int) -> Pair:
    return (x, y) if x < y else (y, x)


@dataclass(frozen=True)
class SearchNode:
    """
    Partial table during generation.

    Lines are closed one at a time; a closed line carries all of its triples
    and never receives another one. Line j in closing order ends with degree
    targets[j].

    Attributes:
        k: Number of lines
        targets: Final degrees in closing order, nonincreasing
        blocks: Triple points placed so far, as sorted triples of line indices
        closed: Lines whose triples are complete
    """

    k: int
    targets: Tuple[int, ...]
    blocks: Tuple[Block, ...]
    closed: FrozenSet[int]

    @property
    def depth(self) -> int:
        return len(self.closed)

    @property
    def is_complete(self) -> bool:
        return self.depth == self.k

    @property
    def partial(self) -> ConfigTable:
        return ConfigTable.from_blocks(self.k, self.blocks)

    def degrees(self) -> List[int]:
        degrees = [0] * self.k
        for block in self.blocks:
            for i in block:
                degrees[i] += 1
        return degrees

    def covered_pairs(self) -> Set[Pair]:
        return {_pair(x, y) for block in self.blocks for x, y in combinations(block, 2)}

    def open_lines(self) -> List[int]:
        return [i for i in range(self.k) if i not in self.closed]

    def colours(self) -> List[int]:
        return [0 if i in self.closed else 1 for i in range(self.k)]

    def remaining(self) -> Dict[int, int]:
        """Census of the lines still to close."""
        quota: Dict[int, int] = {}
        for d in self.targets[self.depth:]:
            quota[d] = quota.get(d, 0) + 1
        return quota


@dataclass(frozen=True)
class EnumeratedClass:
    """One isomorphism class found by the enumerator, with its canonical table."""

    form: CanonicalForm
    table: ConfigTable


def _feasible(node: SearchNode) -> bool:
    """Necessary conditions for completing a node to its target census."""
    if node.is_complete:
        return True
    degrees = node.degrees()
    open_lines = node.open_lines()
    targets = node.targets[node.depth:]
    current = sorted((degrees[i] for i in open_lines), reverse=True)
    if any(c > t for c, t in zip(current, targets)):
        return False

    missing = sum(targets) - sum(current)
    if missing % 3:
        return False
    covered = node.covered_pairs()
    free = {i: 0 for i in open_lines}
    for x, y in combinations(open_lines, 2):
        if (x, y) not in covered:
            free[x] += 1
            free[y] += 1
    if missing // 3 > sum(free.values()) // 6:
        return False
    # every open line still gets at least the smallest target
    floor = targets[-1]
    return all(2 * (floor - degrees[i]) <= free[i] for i in open_lines)


def _orbit_representatives(lines: Sequence[int], generators: Sequence[Automorphism]) -> List[int]:
    parent = {i: i for i in lines}

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for line_map, _ in generators:
        for i in lines:
            j = line_map[i]
            if j not in parent:
                continue
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    return [i for i in lines if find(i) == i]


def _matchings(vertices: Sequence[int], size: int, covered: Set[Pair]) -> Iterator[List[Pair]]:
    """Sets of `size` disjoint pairs of vertices whose pair is not yet covered."""
    if size == 0:
        yield []
        return
    if len(vertices) < 2 * size:
        return
    first, rest = vertices[0], list(vertices[1:])
    for j, partner in enumerate(rest):
        if _pair(first, partner) in covered:
            continue
        for tail in _matchings(rest[:j] + rest[j + 1:], size - 1, covered):
            yield [(first, partner)] + tail
    yield from _matchings(rest, size, covered)


def _children(
    node: SearchNode,
    generators: Sequence[Automorphism],
    rng: Optional[np.random.Generator],
) -> Iterator[SearchNode]:
    """Close one more line, one candidate per orbit of the colour-preserving automorphisms."""
    target = node.targets[node.depth]
    degrees = node.degrees()
    covered = node.covered_pairs()
    open_lines = node.open_lines()
    candidates = [i for i in _orbit_representatives(open_lines, generators) if degrees[i] <= target]
    if rng is not None:
        candidates = [candidates[int(j)] for j in rng.permutation(len(candidates))]

    for line in candidates:
        partners = [x for x in open_lines if x != line and _pair(line, x) not in covered]
        matchings = list(_matchings(partners, target - degrees[line], covered))
        if rng is not None:
            matchings = [matchings[int(j)] for j in rng.permutation(len(matchings))]
        for matching in matchings:
            new_blocks = tuple(tuple(sorted((line, x, y))) for x, y in matching)
            yield SearchNode(
                k=node.k,
                targets=node.targets,
                blocks=tuple(sorted(node.blocks + new_blocks)),
                closed=node.closed | {line},
            )


def _search(k: int, ell: Dict[int, int], rng: Optional[np.random.Generator]) -> List[ConfigTable]:
    targets = tuple(sorted((i for i, count in ell.items() for _ in range(count)), reverse=True))
    root = SearchNode(k=k, targets=targets, blocks=(), closed=frozenset())
    root_labeling = canonical_labeling(root.partial, root.colours())
    level: Dict[CanonicalForm, Tuple[SearchNode, List[Automorphism]]] = {
        root_labeling.form: (root, root_labeling.generators)
    }

    for depth in range(k):
        next_level: Dict[CanonicalForm, Tuple[SearchNode, List[Automorphism]]] = {}
        nodes = list(level.values())
        if rng is not None:
            nodes = [nodes[int(j)] for j in rng.permutation(len(nodes))]
        for node, generators in nodes:
            for child in _children(node, generators, rng):
                if not _feasible(child):
                    continue
                labeling = canonical_labeling(child.partial, child.colours())
                if labeling.form not in next_level:
                    next_level[labeling.form] = (child, labeling.generators)
        level = next_level
        logger.debug(f"Census {ell}: {len(level)} partial classes with {depth + 1} closed lines")
        if not level:
            break

    return [node.partial for node, _ in level.values() if node.is_complete]


def enumerate_tables(
    k: int,
    n3: int,
    exact_three: bool = False,
    min_triples: int = 3,
    shuffle_seed: Optional[int] = None,
    use_filters: bool = True,
) -> List[EnumeratedClass]:
    """
    All configuration tables with k lines and n3 triples up to isomorphism.

    Args:
        k: Number of lines
        n3: Number of triple points
        exact_three: Force exactly three triples on every line
        min_triples: Fewest triples per line (0 drops the at-least-three assumption)
        shuffle_seed: Seed permuting the branching order; the result does not change
        use_filters: Apply the counting facts to skip impossible censuses

    Returns:
        Classes sorted by canonical form, tables in canonical labeling named
        '<k>.<n3>.<index>'

    Raises:
        InfeasibleCensus: If no line census solves the counting identities
    """
    if k > 11:
        logger.warning(f"Enumerating k={k} lines; completeness is only checked up to ten lines")
    censuses = line_census(k, n3, min_triples=min_triples, max_triples=3 if exact_three else None)
    if not censuses:
        raise InfeasibleCensus(k, n3)
    rng = np.random.default_rng(shuffle_seed) if shuffle_seed is not None else None

    found: Dict[CanonicalForm, ConfigTable] = {}
    for ell in censuses:
        if use_filters:
            violations = census_violations(k, n3, ell)
            if violations:
                logger.info(f"Census {ell} skipped: {'; '.join(violations)}")
                continue
        tables = _search(k, ell, rng)
        logger.info(f"Census {ell}: {len(tables)} classes")
        for table in tables:
            found.setdefault(canonical_form(table), table)

    classes = []
    for index, form in enumerate(sorted(found, key=lambda f: f.data), start=1):
        table = canonical_table(found[form]).with_name(f"{k}.{n3}.{index:03d}")
        validate(table)
        classes.append(EnumeratedClass(form=form, table=table))
    logger.info(f"Enumerated {len(classes)} classes for k={k}, n3={n3}, exact_three={exact_three}")
    return classes


def match_registry(classes: Sequence[EnumeratedClass], tables: Iterable[ConfigTable]) -> Dict[str, CanonicalForm]:
    """
    Pair enumerated classes with named registry tables.

    Args:
        classes: Output of enumerate_tables
        tables: Registry tables with the same k and n3

    Returns:
        Map from registry name to canonical form

    Raises:
        CountMismatch: If either side has unmatched members; carries the partial map
    """
    forms = {item.form for item in classes}
    mapping: Dict[str, CanonicalForm] = {}
    unmatched_names: List[str] = []
    for table in tables:
        form = canonical_form(table)
        if form in forms and form not in mapping.values():
            mapping[table.name] = form
        else:
            unmatched_names.append(table.name)
    matched = set(mapping.values())
    unmatched_classes = [item.form for item in classes if item.form not in matched]
    if unmatched_classes or unmatched_names:
        raise CountMismatch(unmatched_classes, unmatched_names, mapping)
    return mapping


def write_enumeration(classes: Sequence[EnumeratedClass], out_dir: Union[str, Path]) -> Path:
    """
    Write one .cfg per class and a manifest of canonical-form digests.

    Returns:
        Path of manifest.yaml
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    entries = []
    for item in classes:
        filename = f"{item.table.name}.cfg"
        (out / filename).write_text(format_table(item.table), encoding='utf-8')
        entries.append({
            'name': item.table.name,
            'file': filename,
            'digest': item.form.digest(),
            'census': validate(item.table).as_dict(),
        })
    manifest = out / 'manifest.yaml'
    with open(manifest, 'w', encoding='utf-8') as handle:
        yaml.safe_dump({'count': len(entries), 'classes': entries}, handle, sort_keys=False)
    logger.info(f"Wrote {len(entries)} tables to {out}")
    return manifest
