"""
Structural graph classes and the atlas that cross-checks solver / oracle
decisions against them.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import asdict, dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import pandas as pd

from apps.orientation import config
from apps.orientation.patterns import (
    SIMPLE_SETS,
    ForbiddenSet,
    Pattern,
    brute_force_orientable,
    format_forbidden_set,
)
from apps.orientation.solver import is_orientable
from libs.graph.core import Arc, Graph, Orientation, connected_components, count_triangles
from libs.graph.errors import GraphInvariantError, OracleCapExceeded
from libs.utils.logging_setup import get_logger

logger = get_logger("orient.classes")


@dataclass(frozen=True)
class ClassProfile:
    unicyclic_per_component: bool
    triangle_free: bool
    bipartite: bool
    max_degree_le_2: bool
    star_or_triangle_components: bool
    k4_free: bool
    locally_bipartite: bool
    complete_components: bool
    complete_multipartite: bool


def _components(g: Graph) -> List[Tuple[Graph, List[int]]]:
    return [g.induced_subgraph(c) for c in connected_components(g)]


def _is_complete(g: Graph) -> bool:
    return g.m == g.n * (g.n - 1) // 2


def _is_star_or_triangle(c: Graph) -> bool:
    if c.n == 3 and c.m == 3:
        return True
    # K1, K2 and K_{1,k}: a tree with a vertex seeing everything
    return c.m == c.n - 1 and any(c.degree(v) == c.n - 1 for v in c.vertices)


def is_unicyclic_per_component(g: Graph) -> bool:
    return all(c.m <= c.n for c, _ in _components(g))


def is_bipartite(g: Graph) -> bool:
    return nx.is_bipartite(g.to_networkx())


def is_k4_free(g: Graph) -> bool:
    for u, v in g.edges:
        common = g.neighbors(u) & g.neighbors(v)
        if any(g.has_edge(a, b) for a, b in itertools.combinations(common, 2)):
            return False
    return True


def is_locally_bipartite(g: Graph) -> bool:
    return all(is_bipartite(g.induced_subgraph(g.neighbors(v))[0]) for v in g.vertices)


def is_complete_multipartite(g: Graph) -> bool:
    """Non-adjacent vertices have equal neighbourhoods"""
    for u, v in itertools.combinations(g.vertices, 2):
        if not g.has_edge(u, v) and g.neighbors(u) != g.neighbors(v):
            return False
    return True


def class_profile(g: Graph) -> ClassProfile:
    comps = [c for c, _ in _components(g)]
    return ClassProfile(
        unicyclic_per_component=all(c.m <= c.n for c in comps),
        triangle_free=count_triangles(g) == 0,
        bipartite=is_bipartite(g),
        max_degree_le_2=g.max_degree() <= 2,
        star_or_triangle_components=all(_is_star_or_triangle(c) for c in comps),
        k4_free=is_k4_free(g),
        locally_bipartite=is_locally_bipartite(g),
        complete_components=all(_is_complete(c) for c in comps),
        complete_multipartite=is_complete_multipartite(g),
    )


def three_coloring(g: Graph, cap: Optional[int] = None) -> Optional[List[int]]:
    """Proper 3-colouring by backtracking in vertex order, or None"""
    cap = config.COLORING_VERTEX_CAP if cap is None else cap
    if g.n > cap:
        raise OracleCapExceeded(f"3-colouring cap is {cap} vertices, graph has {g.n}")
    colour = [-1] * g.n

    def place(v: int) -> bool:
        if v == g.n:
            return True
        used = {colour[w] for w in g.neighbors(v) if w < v}
        for c in range(3):
            if c not in used:
                colour[v] = c
                if place(v + 1):
                    return True
        colour[v] = -1
        return False

    return colour if place(0) else None


# --- constructive orientations ---

def orientation_from_coloring(g: Graph, colouring: Sequence[int]) -> Orientation:
    """Colour class i -> class i+1 (mod 3); every triangle becomes a directed C3"""
    arcs = []
    for u, v in g.edges:
        cu, cv = colouring[u], colouring[v]
        if cu == cv or not (0 <= cu < 3 and 0 <= cv < 3):
            raise GraphInvariantError(f"not a proper 3-colouring at edge ({u}, {v})")
        arcs.append((u, v) if cv == (cu + 1) % 3 else (v, u))
    return Orientation(g, tuple(arcs))


def _cycle_vertices(c: Graph) -> List[int]:
    """Vertices left after repeatedly removing leaves"""
    deg = [c.degree(v) for v in c.vertices]
    alive = [True] * c.n
    queue = deque(v for v in c.vertices if deg[v] <= 1)
    while queue:
        v = queue.popleft()
        if not alive[v]:
            continue
        alive[v] = False
        for w in c.neighbors(v):
            if alive[w]:
                deg[w] -= 1
                if deg[w] == 1:
                    queue.append(w)
    return [v for v in c.vertices if alive[v]]


def _walk(c: Graph, start: int, allowed: Optional[set] = None) -> List[int]:
    """Follow a path or cycle from start through vertices of degree <= 2"""
    order = [start]
    seen = {start}
    v = start
    while True:
        nxt = [w for w in sorted(c.neighbors(v)) if w not in seen and (allowed is None or w in allowed)]
        if not nxt:
            return order
        v = nxt[0]
        seen.add(v)
        order.append(v)


def _lift(g: Graph, pieces: List[Tuple[List[Arc], List[int]]]) -> Orientation:
    arcs: List[Arc] = []
    for local, old in pieces:
        arcs.extend((old[a], old[b]) for a, b in local)
    return Orientation.from_arcs(g, arcs)


def unicyclic_orientation(g: Graph) -> Orientation:
    """
    In-degree at most one everywhere: the cycle of each component is
    directed around, everything else points away from the cycle (or from
    the smallest vertex of a tree component). Free of B1 and T3.
    """
    if not is_unicyclic_per_component(g):
        raise GraphInvariantError("some component has more edges than vertices")
    pieces = []
    for c, old in _components(g):
        local: List[Arc] = []
        roots = _cycle_vertices(c)
        if roots:
            ring = _walk(c, roots[0], set(roots))
            local.extend(zip(ring, ring[1:] + ring[:1]))
        else:
            roots = [0]
        seen = set(roots)
        queue = deque(roots)
        while queue:
            v = queue.popleft()
            for w in sorted(c.neighbors(v)):
                if w not in seen:
                    seen.add(w)
                    local.append((v, w))
                    queue.append(w)
        pieces.append((local, old))
    return _lift(g, pieces)


def degree_two_orientation(g: Graph) -> Orientation:
    """Every path and cycle directed end to end; free of B1, B2 and T3"""
    if g.max_degree() > 2:
        raise GraphInvariantError(f"maximum degree is {g.max_degree()}, expected at most 2")
    pieces = []
    for c, old in _components(g):
        ends = [v for v in c.vertices if c.degree(v) <= 1]
        order = _walk(c, ends[0] if ends else 0)
        local = list(zip(order, order[1:]))
        if not ends and c.n >= 3:
            local.append((order[-1], order[0]))
        pieces.append((local, old))
    return _lift(g, pieces)


def bipartite_orientation(g: Graph) -> Orientation:
    """All edges from side 0 to side 1; free of B3, T3 and C3"""
    side = [-1] * g.n
    for s in g.vertices:
        if side[s] != -1:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if side[w] == -1:
                    side[w] = 1 - side[v]
                    queue.append(w)
                elif side[w] == side[v]:
                    raise GraphInvariantError("graph is not bipartite")
    return Orientation(g, tuple((u, v) if side[u] == 0 else (v, u) for u, v in g.edges))


# --- atlas ---

@dataclass(frozen=True)
class AtlasRow:
    forbid: str
    method: str             # solver | oracle
    decision: str           # yes | no | skipped
    family: str
    check: str              # what the agreement flag compares
    predicate: Optional[bool]
    agree: Optional[bool]


def _fs(*patterns: Pattern) -> ForbiddenSet:
    return frozenset(patterns)


B1, B2, B3, T3, C3, K1K2 = Pattern.B1, Pattern.B2, Pattern.B3, Pattern.T3, Pattern.C3, Pattern.K1K2

# forbidden set -> (family, predicate name) for rows with a structural counterpart
_STRUCTURAL: Dict[ForbiddenSet, Tuple[str, str]] = {
    _fs(B1, T3): ("unicyclic", "unicyclic_per_component"),
    _fs(B2, T3): ("unicyclic", "unicyclic_per_component"),
    _fs(B1, B2, T3): ("max degree <= 2", "max_degree_le_2"),
    _fs(B1, B3, T3): ("stars and triangles", "star_or_triangle_components"),
    _fs(B2, B3, T3): ("stars and triangles", "star_or_triangle_components"),
    _fs(B1, B2, B3): ("complete", "complete_components"),
    _fs(C3, T3): ("triangle-free", "triangle_free"),
    _fs(B3, C3, T3): ("bipartite", "bipartite"),
}

# rows whose decision must match another row
_EQUIVALENT: Dict[ForbiddenSet, Tuple[str, ForbiddenSet]] = {
    _fs(B1): ("1-perfectly orientable (open)", _fs(B2)),
    _fs(B2): ("1-perfectly orientable (open)", _fs(B1)),
    _fs(B1, B3): ("nested interval", _fs(B2, B3)),
    _fs(B2, B3): ("nested interval", _fs(B1, B3)),
    _fs(B3, C3): ("comparability", _fs(B3)),
}

_FAMILY: Dict[ForbiddenSet, str] = {
    _fs(B3): "comparability",
    _fs(T3): "no odd donut / even Moebius donut pre-image",
    _fs(B1, B2): "proper circular-arc",
    _fs(B3, T3): "3-colourable comparability",
    _fs(B1, B2, B3, T3): "components K1, K2, K3",
    _fs(C3): "all graphs",
    _fs(B1, C3): "transitive-perfectly orientable (open)",
    _fs(B1, B2, C3): "proper Helly circular-arc",
    _fs(B1, C3, T3): "triangle-free unicyclic",
    _fs(T3, K1K2): "complete multipartite T3-graphs",
}

ORACLE_SETS: Tuple[ForbiddenSet, ...] = (
    _fs(C3),
    _fs(B1, C3),
    _fs(B3, C3),
    _fs(C3, T3),
    _fs(B1, B2, C3),
    _fs(B1, C3, T3),
    _fs(B3, C3, T3),
    _fs(T3, K1K2),
)


def atlas(g: Graph, oracle_cap: Optional[int] = None, coloring_cap: Optional[int] = None) -> List[AtlasRow]:
    """
    One row per simple set (solver) and per oracle-backed set; each row
    carries the structural predicate or equivalent row it is compared to.
    """
    oracle_cap = config.ATLAS_ORACLE_EDGE_CAP if oracle_cap is None else oracle_cap
    coloring_cap = config.COLORING_VERTEX_CAP if coloring_cap is None else coloring_cap
    profile = asdict(class_profile(g))

    decisions: Dict[ForbiddenSet, Optional[bool]] = {}
    methods: Dict[ForbiddenSet, str] = {}
    for f in SIMPLE_SETS:
        decisions[f] = is_orientable(g, f)
        methods[f] = "solver"
    for f in ORACLE_SETS:
        methods[f] = "oracle"
        try:
            decisions[f] = brute_force_orientable(g, f, cap=oracle_cap) is not None
        except OracleCapExceeded:
            logger.warning("atlas row skipped", extra={"payload": {
                "forbid": format_forbidden_set(f), "m": g.m, "cap": oracle_cap}})
            decisions[f] = None

    colourable: Optional[bool] = None
    if g.n <= coloring_cap:
        colourable = three_coloring(g, cap=coloring_cap) is not None

    def row(f: ForbiddenSet) -> AtlasRow:
        d = decisions[f]
        decision = "skipped" if d is None else ("yes" if d else "no")
        family, check, pred, agree = _FAMILY.get(f, ""), "", None, None
        if f in _STRUCTURAL:
            family, key = _STRUCTURAL[f]
            pred = profile[key]
            check = f"iff {key}"
            agree = None if d is None else d == pred
        elif f in _EQUIVALENT:
            family, other = _EQUIVALENT[f]
            check = f"= {{{format_forbidden_set(other)}}}"
            od = decisions.get(other)
            agree = None if d is None or od is None else d == od
        elif f == _fs(T3):
            # yes => K4-free and locally bipartite; 3-colourable => yes
            pred = profile["k4_free"] and profile["locally_bipartite"]
            check = "yes => k4_free & locally_bipartite; 3-colourable => yes"
            agree = (not d or pred) and (colourable is None or not colourable or d)
        elif f == _fs(B3, T3):
            pred = colourable
            check = "yes => 3-colourable"
            agree = None if colourable is None else (not d or colourable)
        elif f == _fs(B1, B2, B3, T3):
            pred = profile["complete_components"] and all(len(c) <= 3 for c in connected_components(g))
            check = "iff complete components on <= 3 vertices"
            agree = d == pred
        elif f == _fs(C3):
            pred = True
            check = "always yes"
            agree = None if d is None else d
        elif f == _fs(B1, C3, T3):
            pred = profile["triangle_free"] and profile["unicyclic_per_component"]
            check = "iff triangle_free & unicyclic_per_component"
            agree = None if d is None else d == pred
        elif f == _fs(T3, K1K2):
            pred = profile["complete_multipartite"] and decisions[_fs(T3)]
            check = "iff complete_multipartite & {T3}"
            agree = None if d is None else d == pred
        return AtlasRow(format_forbidden_set(f), methods[f], decision, family, check, pred, agree)

    rows = [row(f) for f in SIMPLE_SETS + ORACLE_SETS]
    disagreements = [r.forbid for r in rows if r.agree is False]
    if disagreements:
        logger.error("atlas disagreement", extra={"payload": {"rows": disagreements, "n": g.n, "m": g.m}})
    return rows


def atlas_frame(rows: Sequence[AtlasRow]) -> pd.DataFrame:
    return pd.DataFrame([asdict(r) for r in rows], columns=list(AtlasRow.__dataclass_fields__))


def format_atlas(rows: Sequence[AtlasRow]) -> str:
    """Fixed-width table, one line per forbidden set"""
    frame = atlas_frame(rows)
    frame["forbid"] = ["{" + f + "}" for f in frame["forbid"]]
    frame["predicate"] = [_flag(r.predicate) for r in rows]
    frame["agree"] = [_flag(r.agree) for r in rows]
    return frame.to_string(index=False) + "\n"


def _flag(v: Optional[bool]) -> str:
    return "-" if v is None else ("yes" if v else "no")


def atlas_to_json(rows: Sequence[AtlasRow]) -> List[dict]:
    return [asdict(r) for r in rows]
