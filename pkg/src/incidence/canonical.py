"""
Canonical Form
Canonical labeling of the line/point incidence graph by colour refinement
and individualization, with automorphism pruning of the search tree.
"""

import hashlib
import logging
from dataclasses import dataclass
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

import networkx as nx
from sympy.combinatorics import Permutation, PermutationGroup

from src.incidence.table import ConfigTable, relabel

logger = logging.getLogger(__name__)

Node = Tuple[str, int]
Certificate = Tuple
Automorphism = Tuple[Tuple[int, ...], Tuple[int, ...]]


@dataclass(frozen=True)
class CanonicalForm:
    """
    Canonical serialization of a table up to relabeling of lines and points.

    Attributes:
        data: Bytes equal for two tables iff they are lattice isomorphic
    """

    data: bytes

    def digest(self) -> str:
        return hashlib.sha1(self.data).hexdigest()

    def __lt__(self, other: 'CanonicalForm') -> bool:
        return self.data < other.data

    def __str__(self) -> str:
        return self.data.decode('ascii')


@dataclass
class CanonicalLabeling:
    """
    Result of the canonical labeling search.

    Attributes:
        form: Canonical form
        line_perm: line_perm[i] is the canonical index of line i
        point_perm: point_perm[j] is the canonical index of point j
        generators: Automorphisms found, as (line_perm, point_perm) pairs
    """

    form: CanonicalForm
    line_perm: Tuple[int, ...]
    point_perm: Tuple[int, ...]
    generators: List[Automorphism]


def incidence_graph(table: ConfigTable) -> nx.Graph:
    """Bipartite graph with nodes ('L', i) and ('P', j), parts in the 'part' attribute."""
    graph = nx.Graph()
    graph.add_nodes_from((('L', i) for i in range(table.k)), part='line')
    graph.add_nodes_from((('P', j) for j in range(table.n3)), part='point')
    for i, points in enumerate(table.lines):
        graph.add_edges_from((('L', i), ('P', p)) for p in points)
    return graph


class _Search:
    """Individualization-refinement search over one incidence graph."""

    def __init__(self, table: ConfigTable, line_colours: Optional[Sequence[Hashable]] = None):
        self.table = table
        self.graph = incidence_graph(table)
        self.nodes: List[Node] = sorted(self.graph.nodes)
        self.neighbours: Dict[Node, List[Node]] = {v: list(self.graph.neighbors(v)) for v in self.nodes}
        self.line_colours = tuple(line_colours) if line_colours is not None else (0,) * table.k
        if len(self.line_colours) != table.k:
            raise ValueError(f"Expected {table.k} line colours, got {len(self.line_colours)}")
        self.first: Optional[Tuple[Certificate, Dict[Node, int]]] = None
        self.best: Optional[Tuple[Certificate, Dict[Node, int]]] = None
        self.generators: List[Dict[Node, Node]] = []
        self.distinct_points = len(set(table.point_lines)) == table.n3
        self.leaves = 0

    def initial_colouring(self) -> Dict[Node, int]:
        # lines before points; extra line colours ranked canonically
        distinct = sorted(set(self.line_colours), key=repr)
        rank = {c: r for r, c in enumerate(distinct)}
        colours = {('L', i): rank[self.line_colours[i]] for i in range(self.table.k)}
        colours.update({('P', j): len(distinct) for j in range(self.table.n3)})
        return colours

    def refine(self, colours: Dict[Node, int]) -> Dict[Node, int]:
        """Colour refinement until the number of cells is stable."""
        cells = len(set(colours.values()))
        while True:
            signatures = {
                v: (colours[v], tuple(sorted(colours[u] for u in self.neighbours[v])))
                for v in self.nodes
            }
            ranking = {sig: r for r, sig in enumerate(sorted(set(signatures.values())))}
            refined = {v: ranking[signatures[v]] for v in self.nodes}
            new_cells = len(ranking)
            if new_cells == cells:
                return refined
            colours, cells = refined, new_cells

    def target_cell(self, colours: Dict[Node, int]) -> Optional[List[Node]]:
        """First non-singleton cell, lines before points."""
        by_colour: Dict[int, List[Node]] = {}
        for v in self.nodes:
            by_colour.setdefault(colours[v], []).append(v)
        candidates = [cell for _, cell in sorted(by_colour.items()) if len(cell) > 1]
        if not candidates:
            return None
        lines = [cell for cell in candidates if cell[0][0] == 'L']
        return (lines or candidates)[0]

    def certificate(self, colours: Dict[Node, int]) -> Certificate:
        k = self.table.k
        line_rank = {i: colours[('L', i)] for i in range(k)}
        blocks = sorted(
            tuple(sorted(line_rank[i] for i in lines))
            for lines in self.table.point_lines
        )
        relabeled_colours = [None] * k
        for i in range(k):
            relabeled_colours[line_rank[i]] = repr(self.line_colours[i])
        return (k, self.table.n3, tuple(relabeled_colours), tuple(blocks))

    def _stabilizer_orbits(self, prefix: Sequence[Node]) -> Dict[Node, Node]:
        """Union-find orbits of the found generators fixing the prefix pointwise."""
        parent = {v: v for v in self.nodes}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for gamma in self.generators:
            if any(gamma[v] != v for v in prefix):
                continue
            for v in self.nodes:
                ra, rb = find(v), find(gamma[v])
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        return {v: find(v) for v in self.nodes}

    def _record_automorphism(self, labeling: Dict[Node, int], reference: Dict[Node, int]):
        inverse = {rank: v for v, rank in reference.items()}
        gamma = {v: inverse[labeling[v]] for v in self.nodes}
        if self.distinct_points:
            # point images follow from the line images
            line_map = [gamma[('L', i)][1] for i in range(self.table.k)]
            for j, image in enumerate(self._point_images(line_map, ranked=False)):
                gamma[('P', j)] = ('P', image)
        if all(gamma[v] == v for v in self.nodes):
            return
        if gamma not in self.generators:
            self.generators.append(gamma)

    def _point_images(self, line_map: Sequence[int], ranked: bool = True) -> Tuple[int, ...]:
        """
        Point permutation induced by a line permutation.

        With ranked=True points are numbered by their relabeled line sets in
        sorted order; otherwise each point goes to the existing point on the
        image lines.
        """
        images = [tuple(sorted(line_map[i] for i in lines)) for lines in self.table.point_lines]
        if ranked:
            order = sorted(range(len(images)), key=lambda j: images[j])
            perm = [0] * len(images)
            for new, j in enumerate(order):
                perm[j] = new
            return tuple(perm)
        index = {lines: j for j, lines in enumerate(self.table.point_lines)}
        return tuple(index[image] for image in images)

    def visit(self, colours: Dict[Node, int], prefix: List[Node]):
        colours = self.refine(colours)
        cell = self.target_cell(colours)
        if cell is None:
            self.leaves += 1
            cert = self.certificate(colours)
            if self.first is None:
                self.first = (cert, colours)
                self.best = (cert, colours)
                return
            if cert == self.first[0]:
                self._record_automorphism(colours, self.first[1])
            if cert == self.best[0]:
                self._record_automorphism(colours, self.best[1])
            elif cert > self.best[0]:
                self.best = (cert, colours)
            return

        explored: List[Node] = []
        for v in cell:
            if explored:
                orbits = self._stabilizer_orbits(prefix)
                if any(orbits[v] == orbits[w] for w in explored):
                    continue
            explored.append(v)
            child = {u: 2 * c + (0 if u == v else 1) for u, c in colours.items()}
            self.visit(child, prefix + [v])

    def run(self) -> CanonicalLabeling:
        self.visit(self.initial_colouring(), [])
        cert, colours = self.best
        k = self.table.k
        line_perm = tuple(colours[('L', i)] for i in range(k))
        point_perm = self._point_images(line_perm)
        data = repr(cert).replace(' ', '').encode('ascii')
        generators = []
        for g in self.generators:
            lines = tuple(g[('L', i)][1] for i in range(k))
            points = tuple(g[('P', j)][1] for j in range(self.table.n3))
            generators.append((lines, points))
        logger.debug(f"Canonical labeling of {self.table}: {self.leaves} leaves, {len(generators)} generators")
        return CanonicalLabeling(CanonicalForm(data), line_perm, point_perm, generators)


def canonical_labeling(table: ConfigTable, line_colours: Optional[Sequence[Hashable]] = None) -> CanonicalLabeling:
    """
    Canonical labeling with the automorphism generators found along the way.

    Args:
        table: Any incidence table (points need not be triples)
        line_colours: Optional colour per line that isomorphisms must preserve

    Returns:
        CanonicalLabeling
    """
    return _Search(table, line_colours).run()


def canonical_form(table: ConfigTable, line_colours: Optional[Sequence[Hashable]] = None) -> CanonicalForm:
    """Canonical form; equal for two tables iff they are isomorphic."""
    return canonical_labeling(table, line_colours).form


def canonical_table(table: ConfigTable) -> ConfigTable:
    """The table relabeled into canonical order."""
    labeling = canonical_labeling(table)
    return relabel(table, labeling.line_perm, labeling.point_perm)


def is_isomorphic(first: ConfigTable, second: ConfigTable) -> bool:
    if (first.k, first.n3) != (second.k, second.n3):
        return False
    return canonical_form(first) == canonical_form(second)


def automorphisms(table: ConfigTable) -> List[Automorphism]:
    """
    Generators of the automorphism group of the table.

    Returns:
        (line_perm, point_perm) pairs; line_perm[i] is the image of line i
    """
    return canonical_labeling(table).generators


def automorphism_group_order(table: ConfigTable) -> int:
    """Order of the group generated by the line parts of the automorphisms."""
    generators = [Permutation(list(lines)) for lines, _ in automorphisms(table)]
    if not generators:
        return 1
    return int(PermutationGroup(generators).order())
