"""
Constraint digraph D+ of a graph G and a simple forbidden set F.

Vertices are the 2m orientations (x, y) of the edges of G; an arc
(x, y) -> (z, w) reads "orienting x -> y forces z -> w".
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Set, Tuple

from apps.orientation.patterns import ForbiddenSet, Pattern, format_forbidden_set, require_simple
from libs.graph.core import Arc, Graph
from libs.graph.errors import GraphInvariantError
from libs.utils.logging_setup import get_logger

logger = get_logger("orient.constraint")


@dataclass(frozen=True)
class ConstraintDigraph:
    """
    Vertex k encodes the pair (x, y) of edge i = k // 2: k = 2i when x < y,
    k = 2i + 1 otherwise. The dual of k is k ^ 1.
    Only forward adjacency is stored.
    """
    graph: Graph
    forbid: ForbiddenSet
    succ: Tuple[Tuple[int, ...], ...]

    @property
    def num_vertices(self) -> int:
        return len(self.succ)

    @property
    def num_arcs(self) -> int:
        return sum(len(s) for s in self.succ)

    def pair(self, k: int) -> Arc:
        u, v = self.graph.edges[k >> 1]
        return (v, u) if k & 1 else (u, v)

    def vertex_id(self, x: int, y: int) -> int:
        if not self.graph.has_edge(x, y):
            raise GraphInvariantError(f"({x}, {y}) is not a vertex of D+")
        return 2 * self.graph.edge_index(x, y) + (0 if x < y else 1)

    @staticmethod
    def dual(k: int) -> int:
        return k ^ 1

    def dual_vertex(self, v: Arc) -> Arc:
        x, y = v
        self.vertex_id(x, y)
        return (y, x)

    def successors(self, k: int) -> Tuple[int, ...]:
        return self.succ[k]

    def has_arc(self, a: int, b: int) -> bool:
        return b in self.succ[a]

    def arcs(self) -> Iterator[Tuple[int, int]]:
        for a, heads in enumerate(self.succ):
            for b in heads:
                yield a, b

    def arc_pairs(self) -> List[Tuple[Arc, Arc]]:
        return sorted((self.pair(a), self.pair(b)) for a, b in self.arcs())

    def dump(self) -> str:
        """One arc per line 'x,y -> z,w', sorted"""
        lines = [f"{x},{y} -> {z},{w}" for (x, y), (z, w) in self.arc_pairs()]
        return "\n".join(lines) + ("\n" if lines else "")


def build_constraint_digraph(g: Graph, f: Iterable[Pattern]) -> ConstraintDigraph:
    f = require_simple(f)
    b1, b2, b3, t3 = (p in f for p in (Pattern.B1, Pattern.B2, Pattern.B3, Pattern.T3))
    heads: List[Set[int]] = [set() for _ in range(2 * g.m)]

    def vid(x: int, y: int) -> int:
        return 2 * g.edge_index(x, y) + (0 if x < y else 1)

    def add(a: Arc, b: Arc) -> None:
        heads[vid(*a)].add(vid(*b))

    # every labelled path x-y-z / triangle x,y,z, keyed by its middle vertex y
    for y in g.vertices:
        nbrs = sorted(g.neighbors(y))
        for x in nbrs:
            for z in nbrs:
                if x == z:
                    continue
                if g.has_edge(x, z):
                    if t3:
                        add((x, y), (y, z))
                        add((x, y), (z, x))
                    continue
                if b1:
                    add((x, y), (y, z))
                if b2:
                    add((y, x), (z, y))
                if b3:
                    add((x, y), (z, y))
                    add((y, x), (y, z))

    d = ConstraintDigraph(g, f, tuple(tuple(sorted(h)) for h in heads))
    logger.debug("constraint digraph built", extra={"payload": {
        "forbid": format_forbidden_set(f), "vertices": d.num_vertices, "arcs": d.num_arcs}})
    return d


def dual_vertex(d: ConstraintDigraph, v: Arc) -> Arc:
    return d.dual_vertex(v)


def out_degree_bound(g: Graph, x: int, y: int) -> int:
    """Upper bound on the out-degree of (x, y): heads share x or y and a third vertex"""
    return 2 * (g.degree(x) + g.degree(y) - 2)


def arc_count_bound(g: Graph) -> int:
    return sum(2 * out_degree_bound(g, u, v) for u, v in g.edges)


def reachable_from(d: ConstraintDigraph, source: int) -> Set[int]:
    seen = {source}
    queue = deque([source])
    while queue:
        a = queue.popleft()
        for b in d.succ[a]:
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return seen
