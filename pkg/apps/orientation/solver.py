"""
Decide F-orientability for simple forbidden sets: strong components of
D+ in reverse topological order, true/false marking, certificates.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from apps.orientation.constraint import ConstraintDigraph, build_constraint_digraph
from apps.orientation.patterns import Pattern, format_forbidden_set, require_simple, violations
from libs.graph.core import Arc, Edge, Graph, Orientation, connected_components
from libs.graph.errors import PathPreconditionError
from libs.utils.logging_setup import get_logger

logger = get_logger("orient.solver")


@dataclass(frozen=True)
class YesCertificate:
    orientation: Orientation

    @property
    def answer(self) -> str:
        return "yes"


@dataclass(frozen=True)
class NoCertificate:
    edge: Edge
    path: Tuple[Arc, ...]

    @property
    def answer(self) -> str:
        return "no"


Certificate = Union[YesCertificate, NoCertificate]


def scc_reverse_topological(d: ConstraintDigraph) -> List[List[int]]:
    """
    Tarjan's algorithm, iterative. Components come out in reverse
    topological order: if S1 reaches S2 then S2 is emitted first.
    """
    n = d.num_vertices
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: List[int] = []
    comps: List[List[int]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        # frames: (vertex, position in its successor list)
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, pos = work[-1]
            heads = d.succ[v]
            if pos < len(heads):
                work[-1] = (v, pos + 1)
                w = heads[pos]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


def component_map(comps: Sequence[Sequence[int]], n: int) -> List[int]:
    comp_of = [-1] * n
    for ci, comp in enumerate(comps):
        for k in comp:
            comp_of[k] = ci
    return comp_of


def mark_components(comps: Sequence[Sequence[int]], comp_of: Sequence[int]) -> Optional[List[bool]]:
    """
    Walk components in the given (reverse topological) order: an unmarked
    S is marked true and its dual false; a self-dual S stops the walk.
    Returns the marks per component, or None when some S equals its dual.
    """
    marks: List[Optional[bool]] = [None] * len(comps)
    for ci, comp in enumerate(comps):
        if marks[ci] is not None:
            continue
        dual_ci = comp_of[comp[0] ^ 1]
        if dual_ci == ci:
            return None
        marks[ci] = True
        marks[dual_ci] = False
    return marks


def _bfs_path(d: ConstraintDigraph, source: int, target: int) -> Optional[List[int]]:
    parent: Dict[int, int] = {source: source}
    queue = deque([source])
    while queue:
        a = queue.popleft()
        if a == target:
            path = [a]
            while a != source:
                a = parent[a]
                path.append(a)
            return path[::-1]
        for b in d.succ[a]:
            if b not in parent:
                parent[b] = a
                queue.append(b)
    return None


def extract_contradicting_path(d: ConstraintDigraph, edge: Tuple[int, int]) -> List[Arc]:
    """Shortest directed path (x,y) ~> (y,x); both must share a strong component"""
    x, y = edge
    src, dst = d.vertex_id(x, y), d.vertex_id(y, x)
    forward = _bfs_path(d, src, dst)
    if forward is None or _bfs_path(d, dst, src) is None:
        raise PathPreconditionError(
            f"({x},{y}) and ({y},{x}) are not in the same strong component")
    return [d.pair(k) for k in forward]


def solve(g: Graph, f: Iterable[Pattern]) -> Certificate:
    f = require_simple(f)
    d = build_constraint_digraph(g, f)
    comps = scc_reverse_topological(d)
    comp_of = component_map(comps, d.num_vertices)
    marks = mark_components(comps, comp_of)

    if marks is None:
        edge = next(e for i, e in enumerate(g.edges) if comp_of[2 * i] == comp_of[2 * i + 1])
        path = extract_contradicting_path(d, edge)
        logger.info("no F-free orientation", extra={"payload": {
            "forbid": format_forbidden_set(f), "edge": edge, "path_len": len(path)}})
        return NoCertificate(edge, tuple(path))

    arcs = tuple((u, v) if marks[comp_of[2 * i]] else (v, u) for i, (u, v) in enumerate(g.edges))
    logger.info("F-free orientation found", extra={"payload": {
        "forbid": format_forbidden_set(f), "n": g.n, "m": g.m, "components": len(comps)}})
    return YesCertificate(Orientation(g, arcs))


def solve_components(g: Graph, f: Iterable[Pattern]) -> List[Tuple[List[int], Certificate]]:
    """Solve every connected component separately (vertices relabelled per component)"""
    out = []
    for comp in connected_components(g):
        sub, _ = g.induced_subgraph(comp)
        out.append((comp, solve(sub, f)))
    return out


def verify_certificate(g: Graph, f: Iterable[Pattern], cert: Certificate) -> bool:
    """Independent re-check: violations() for YES, arc membership in a fresh D+ for NO"""
    f = require_simple(f)
    if isinstance(cert, YesCertificate):
        o = cert.orientation
        return o.base == g and not violations(o, f)
    x, y = cert.edge
    path = cert.path
    if not g.has_edge(x, y) or len(path) < 2:
        return False
    if path[0] != (x, y) or path[-1] != (y, x):
        return False
    d = build_constraint_digraph(g, f)
    for a, b in zip(path, path[1:]):
        if not (g.has_edge(*a) and g.has_edge(*b)):
            return False
        if not d.has_arc(d.vertex_id(*a), d.vertex_id(*b)):
            return False
    return True


def certificate_to_json(cert: Certificate) -> dict:
    if isinstance(cert, YesCertificate):
        return {"answer": "yes", "orientation": [list(a) for a in cert.orientation.arcs]}
    return {"answer": "no", "edge": list(cert.edge), "path": [list(a) for a in cert.path]}


def certificate_from_json(data: dict, g: Graph) -> Certificate:
    if data.get("answer") == "yes":
        return YesCertificate(Orientation.from_arcs(g, [tuple(a) for a in data["orientation"]]))
    edge = tuple(data["edge"])
    return NoCertificate((edge[0], edge[1]), tuple((a, b) for a, b in data["path"]))


def is_orientable(g: Graph, f: Iterable[Pattern]) -> bool:
    return isinstance(solve(g, f), YesCertificate)
