"""
Simple undirected graphs over vertices 0..n-1, their orientations,
the edge-list text format and a few elementary queries.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from libs.graph.errors import GraphFormatError, GraphInvariantError

Edge = Tuple[int, int]
Arc = Tuple[int, int]


def canonical_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """
    Immutable simple graph.

    `edges` is stored canonically: every pair has its smaller endpoint
    first and the tuple is sorted lexicographically. Any iterable of pairs
    is accepted by the constructor; repeated pairs collapse into one edge.
    """
    n: int
    edges: Tuple[Edge, ...] = ()
    _adj: Tuple[frozenset, ...] = field(init=False, repr=False, compare=False)
    _index: Dict[Edge, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphInvariantError(f"vertex count must be non-negative, got {self.n}")
        canon = set()
        for u, v in self.edges:
            if u == v:
                raise GraphInvariantError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphInvariantError(f"edge ({u}, {v}) out of range for n={self.n}")
            canon.add(canonical_edge(int(u), int(v)))
        edges = tuple(sorted(canon))
        adj: List[set] = [set() for _ in range(self.n)]
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(edges)})

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> frozenset:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self._adj[u]

    def edge_index(self, u: int, v: int) -> int:
        """Position of {u,v} in the canonical edge order"""
        try:
            return self._index[canonical_edge(u, v)]
        except KeyError:
            raise GraphInvariantError(f"({u}, {v}) is not an edge") from None

    def induced_subgraph(self, vertices: Iterable[int]) -> Tuple["Graph", List[int]]:
        """Induced subgraph relabelled to 0..k-1; also returns new -> old vertex map"""
        old = sorted(set(vertices))
        new_of = {v: i for i, v in enumerate(old)}
        edges = [(new_of[u], new_of[v]) for u, v in self.edges if u in new_of and v in new_of]
        return Graph(len(old), edges), old

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        """Nodes are relabelled in sorted order when they are not already 0..n-1"""
        nodes = sorted(g.nodes())
        if nodes != list(range(len(nodes))):
            g = nx.convert_node_labels_to_integers(g, ordering="sorted")
        return cls(g.number_of_nodes(), list(g.edges()))


def disjoint_union(*graphs: Graph) -> Graph:
    edges: List[Edge] = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(offset, edges)


def identify_vertices(g: Graph, pairs: Sequence[Tuple[int, int]]) -> Tuple[Graph, List[int]]:
    """
    Quotient of g under the equivalence generated by `pairs`.

    Every class is represented by its smallest vertex, representatives are
    compacted to 0..k-1 in increasing order, parallel edges are merged.
    Returns the quotient and the map old vertex -> new vertex.
    Raises GraphInvariantError if an edge would become a loop.
    """
    parent = list(range(g.n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    reps = sorted({find(v) for v in range(g.n)})
    new_of_rep = {r: i for i, r in enumerate(reps)}
    vertex_map = [new_of_rep[find(v)] for v in range(g.n)]
    edges = []
    for u, v in g.edges:
        a, b = vertex_map[u], vertex_map[v]
        if a == b:
            raise GraphInvariantError(f"identification turns edge ({u}, {v}) into a loop")
        edges.append((a, b))
    return Graph(len(reps), edges), vertex_map


@dataclass(frozen=True)
class Orientation:
    """
    One direction per edge of `base`.

    `arcs[i]` is the chosen ordered pair for `base.edges[i]`.
    """
    base: Graph
    arcs: Tuple[Arc, ...]

    def __post_init__(self):
        arcs = tuple((int(u), int(v)) for u, v in self.arcs)
        if len(arcs) != self.base.m:
            raise GraphInvariantError(
                f"orientation has {len(arcs)} arcs but the graph has {self.base.m} edges")
        for (u, v), e in zip(arcs, self.base.edges):
            if canonical_edge(u, v) != e:
                raise GraphInvariantError(f"arc ({u}, {v}) does not orient edge {e}")
        object.__setattr__(self, "arcs", arcs)

    @classmethod
    def from_arcs(cls, base: Graph, arcs: Iterable[Arc]) -> "Orientation":
        """Build from arcs in any order; every base edge exactly once"""
        slots: List[Optional[Arc]] = [None] * base.m
        for u, v in arcs:
            i = base.edge_index(u, v)
            if slots[i] is not None:
                raise GraphInvariantError(f"edge {base.edges[i]} oriented twice")
            slots[i] = (u, v)
        missing = [base.edges[i] for i, a in enumerate(slots) if a is None]
        if missing:
            raise GraphInvariantError(f"edges without direction: {missing[:5]}")
        return cls(base, tuple(slots))

    def points(self, u: int, v: int) -> bool:
        """True iff the edge {u,v} is oriented u -> v"""
        return self.arcs[self.base.edge_index(u, v)] == (u, v)

    def reversed(self) -> "Orientation":
        return Orientation(self.base, tuple((v, u) for u, v in self.arcs))


# --- text formats ---

def _data_lines(text: str):
    """Yield (line number, tokens) for non-blank, non-comment lines"""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def _int_pair(tokens: List[str], lineno: int, what: str) -> Tuple[int, int]:
    if len(tokens) != 2:
        raise GraphFormatError(f"expected two integers ({what}), got {' '.join(tokens)!r}", lineno)
    try:
        a, b = int(tokens[0]), int(tokens[1])
    except ValueError:
        raise GraphFormatError(f"expected two integers ({what}), got {' '.join(tokens)!r}", lineno) from None
    return a, b


def _parse_pairs(text: str) -> Tuple[int, int, List[Tuple[int, int, int]]]:
    """Header + m pair lines; returns n, m and (lineno, a, b) triples"""
    lines = _data_lines(text)
    try:
        lineno, tokens = next(lines)
    except StopIteration:
        raise GraphFormatError("empty document: missing 'n m' header", 1) from None
    n, m = _int_pair(tokens, lineno, "header 'n m'")
    if n < 0 or m < 0:
        raise GraphFormatError(f"negative header values n={n} m={m}", lineno)
    pairs = []
    last = lineno
    for lineno, tokens in lines:
        last = lineno
        a, b = _int_pair(tokens, lineno, "'u v'")
        pairs.append((lineno, a, b))
        if len(pairs) > m:
            raise GraphFormatError(f"more than the declared {m} edges", lineno)
    if len(pairs) < m:
        raise GraphFormatError(f"declared {m} edges but found {len(pairs)}", last)
    return n, m, pairs


def parse_graph(text: str) -> Graph:
    """Parse the edge-list document: header 'n m', then m lines 'u v'"""
    n, _, pairs = _parse_pairs(text)
    seen = set()
    for lineno, u, v in pairs:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex out of range [0, {n}) in edge ({u}, {v})", lineno)
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", lineno)
        e = canonical_edge(u, v)
        if e in seen:
            raise GraphFormatError(f"duplicate edge {e}", lineno)
        seen.add(e)
    return Graph(n, seen)


def write_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_orientation(text: str, base: Graph) -> Orientation:
    """Same layout as the edge list; each line 'u v' is the arc u -> v of an edge of base"""
    n, m, pairs = _parse_pairs(text)
    if n != base.n or m != base.m:
        raise GraphFormatError(
            f"header '{n} {m}' does not match the graph ({base.n} vertices, {base.m} edges)", 1)
    slots: List[Optional[Arc]] = [None] * base.m
    for lineno, u, v in pairs:
        if not base.has_edge(u, v):
            raise GraphFormatError(f"({u}, {v}) is not an edge of the graph", lineno)
        i = base.edge_index(u, v)
        if slots[i] is not None:
            raise GraphFormatError(f"edge {base.edges[i]} oriented twice", lineno)
        slots[i] = (u, v)
    return Orientation(base, tuple(slots))


def write_orientation(o: Orientation) -> str:
    lines = [f"{o.base.n} {o.base.m}"]
    lines.extend(f"{u} {v}" for u, v in o.arcs)
    return "\n".join(lines) + "\n"


# --- elementary queries ---

def connected_components(g: Graph) -> List[List[int]]:
    """Vertex partition into connected components, each sorted, ordered by smallest vertex"""
    seen = [False] * g.n
    comps: List[List[int]] = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def count_triangles(g: Graph) -> int:
    total = 0
    for u, v in g.edges:
        # u < v; count each triangle once at its largest vertex
        total += sum(1 for w in g.neighbors(u) & g.neighbors(v) if w > v)
    return total


def triangles(g: Graph) -> List[Tuple[int, int, int]]:
    """All triangles as sorted triples"""
    out = []
    for u, v in g.edges:
        out.extend((u, v, w) for w in sorted(g.neighbors(u) & g.neighbors(v)) if w > v)
    return out
