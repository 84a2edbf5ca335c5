"""
T3 obstructions: turn a contradicting path of the T3 constraint graph G+
into an odd donut or an even Moebius donut D/R together with a
homomorphism D/R -> G.

Indexing follows the construction: path entries a_1..a_n are numbered
from 1, the t-join D lives on vertices 0..n.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from apps.orientation.patterns import Pattern
from apps.orientation.solver import NoCertificate, solve
from libs.graph.core import Arc, Graph, count_triangles, identify_vertices
from libs.graph.errors import GraphInvariantError, ObstructionInvariantError, WalkLabelError
from libs.utils.logging_setup import get_logger

logger = get_logger("orient.obstruction")


class ObstructionKind(str, Enum):
    ODD_DONUT = "odd_donut"
    EVEN_MOBIUS_DONUT = "even_mobius_donut"


@dataclass(frozen=True)
class WalkLabels:
    path: Tuple[Arc, ...]
    fplus: Dict[int, int]     # i -> f+(a_i), i = 1..n
    fminus: Dict[int, int]    # i -> f-(a_i)
    k: Dict[int, int]         # i -> k(i), i = 2..n
    c: Tuple[int, ...]        # c(0..n)
    p0: Dict[int, int]        # i -> 0-predecessor, i = 2..n
    p1: Dict[int, int]        # i -> 1-predecessor

    @property
    def n(self) -> int:
        return len(self.path)

    def tail(self, i: int) -> int:
        return self.path[i - 1][0]

    def head(self, i: int) -> int:
        return self.path[i - 1][1]

    def phi(self) -> Tuple[int, ...]:
        """phi(0) = f-(a_1), phi(i) = f+(a_i)"""
        return (self.fminus[1],) + tuple(self.fplus[i] for i in range(1, self.n + 1))


@dataclass(frozen=True)
class Obstruction:
    kind: ObstructionKind
    tjoin: Graph                          # spanning t-join D on 0..n
    identify: Tuple[Tuple[int, int], ...]  # relation R
    phi: Tuple[int, ...]                  # D -> G
    host: Graph                           # D/R
    vertex_map: Tuple[int, ...]           # D -> D/R
    host_map: Tuple[int, ...]             # D/R -> G
    q0: Tuple[int, ...]                   # underlying path c^-1(0)
    q1: Tuple[int, ...]                   # underlying path c^-1(1)


def _t3_step(g: Graph, a: Arc, b: Arc) -> bool:
    """Is a -> b an arc of the T3 constraint graph?"""
    t, h = a
    t2, h2 = b
    if not (g.has_edge(t, h) and g.has_edge(t2, h2)):
        return False
    if t2 == h and h2 != t:
        return g.has_edge(t, h2)
    if h2 == t and t2 != h:
        return g.has_edge(h, t2)
    return False


def labels_from_k_sequence(k: Mapping[int, int], n: int):
    """
    c, p0, p1 and the t-join edges E_n driven by k(2..n).

    Returns (c, p0, p1, edges) where edges lists 01 first and then
    (i, p0(i)), (i, p1(i)) for i = 2..n.
    """
    c = [0, 1]
    p0: Dict[int, int] = {}
    p1: Dict[int, int] = {}
    last = [0, 1]  # latest vertex seen with colour 0 / 1
    edges: List[Tuple[int, int]] = [(0, 1)]
    for i in range(2, n + 1):
        ki = k[i]
        if not 0 <= ki < i:
            raise WalkLabelError(f"k({i}) = {ki} is not in [0, {i})")
        p0[i], p1[i] = last
        c.append((c[ki] + 1) % 2)
        last[c[i]] = i
        edges.extend([(i, p0[i]), (i, p1[i])])
    return tuple(c), p0, p1, edges


def compute_walk_labels(path: Sequence[Arc], g: Graph) -> WalkLabels:
    path = tuple((int(a), int(b)) for a, b in path)
    n = len(path)
    if n < 3:
        raise WalkLabelError(f"contradicting path needs at least 3 entries, got {n}")
    x, y = path[0]
    if path[-1] != (y, x):
        raise WalkLabelError(f"path ends at {path[-1]}, expected ({y}, {x})")
    for i in range(1, n):
        if not _t3_step(g, path[i - 1], path[i]):
            raise WalkLabelError(f"{path[i - 1]} -> {path[i]} is not an arc of the T3 constraint graph")

    fplus: Dict[int, int] = {}
    fminus: Dict[int, int] = {}
    if x in path[1]:
        fplus[1], fminus[1] = x, y
    else:
        fplus[1], fminus[1] = y, x
    for i in range(2, n + 1):
        prev, cur = set(path[i - 2]), path[i - 1]
        shared = [v for v in cur if v in prev]
        if len(shared) != 1:
            raise WalkLabelError(f"entries {i - 1} and {i} share {len(shared)} endpoints")
        fminus[i] = shared[0]
        fplus[i] = cur[0] if cur[1] == shared[0] else cur[1]

    phi = [fminus[1]] + [fplus[i] for i in range(1, n + 1)]
    k: Dict[int, int] = {}
    for i in range(2, n + 1):
        matches = [j for j in range(i) if phi[j] == fminus[i]]
        if not matches:
            raise WalkLabelError(f"no j < {i} with phi(j) = f-(a_{i}) = {fminus[i]}")
        k[i] = matches[-1]

    c, p0, p1, _ = labels_from_k_sequence(k, n)
    return WalkLabels(path, fplus, fminus, k, c, p0, p1)


def verify_homomorphism(mapping: Sequence[int], src: Graph, dst: Graph) -> bool:
    if len(mapping) != src.n:
        raise GraphInvariantError(f"map covers {len(mapping)} of {src.n} vertices")
    for v, img in enumerate(mapping):
        if not 0 <= img < dst.n:
            raise GraphInvariantError(f"vertex {v} maps to {img}, outside [0, {dst.n})")
    return all(mapping[u] != mapping[v] and dst.has_edge(mapping[u], mapping[v]) for u, v in src.edges)


def _fail(msg: str, **payload) -> ObstructionInvariantError:
    logger.error(msg, extra={"payload": payload})
    return ObstructionInvariantError(msg)


def build_obstruction(labels: WalkLabels, g: Graph) -> Obstruction:
    n = labels.n
    _, _, _, edges = labels_from_k_sequence(labels.k, n)
    tjoin = Graph(n + 1, edges)
    if tjoin.m != 2 * n - 1:
        raise _fail("t-join edges collapsed", n=n, m=tjoin.m)
    phi = labels.phi()
    if not verify_homomorphism(phi, tjoin, g):
        raise _fail("phi is not a homomorphism from the t-join", phi=phi)

    x, y = labels.path[0]
    kn = labels.k[n]
    if {phi[0], phi[1]} != {x, y} or {phi[n], phi[kn]} != {x, y}:
        raise _fail("end vertices of the t-join do not map onto the witness edge",
                    phi=phi, edge=(x, y), k_n=kn)
    if phi[n] == phi[0]:
        identify = ((n, 0), (kn, 1))
        glued_start_colour = 0
    else:
        identify = ((n, 1), (kn, 0))
        glued_start_colour = 1
    mobius = labels.c[n] != glued_start_colour
    kind = ObstructionKind.EVEN_MOBIUS_DONUT if mobius else ObstructionKind.ODD_DONUT

    tri = count_triangles(tjoin)
    if tri != n - 1:
        raise _fail("t-join triangle count differs from |V| - 2", triangles=tri, n=n)
    if (tri % 2 == 0) != mobius:
        raise _fail("triangle parity contradicts the donut kind", triangles=tri, kind=kind.value)

    try:
        host, vertex_map = identify_vertices(tjoin, identify)
    except GraphInvariantError as e:
        raise _fail(f"degenerate quotient: {e}", identify=identify) from e
    host_map = [-1] * host.n
    for v, hv in enumerate(vertex_map):
        if host_map[hv] not in (-1, phi[v]):
            raise _fail("phi is not constant on an identified class", vertex=v)
        host_map[hv] = phi[v]
    if not verify_homomorphism(host_map, host, g):
        raise _fail("induced map D/R -> G is not a homomorphism", host_map=host_map)

    q0 = tuple(i for i in range(n + 1) if labels.c[i] == 0)
    q1 = tuple(i for i in range(n + 1) if labels.c[i] == 1)
    logger.info("obstruction built", extra={"payload": {
        "kind": kind.value, "tjoin_vertices": n + 1, "host_vertices": host.n}})
    return Obstruction(kind, tjoin, identify, tuple(phi), host, tuple(vertex_map), tuple(host_map), q0, q1)


def extract_t3_obstruction(g: Graph) -> Optional[Obstruction]:
    """None when g admits a T3-free orientation"""
    cert = solve(g, {Pattern.T3})
    if not isinstance(cert, NoCertificate):
        return None
    labels = compute_walk_labels(cert.path, g)
    return build_obstruction(labels, g)


def obstruction_to_json(obs: Obstruction) -> dict:
    return {
        "kind": obs.kind.value,
        "tjoin": {"n": obs.tjoin.n, "edges": [list(e) for e in obs.tjoin.edges]},
        "identify": [list(p) for p in obs.identify],
        "phi": list(obs.phi),
    }


def verify_obstruction(data: dict, g: Graph) -> bool:
    """
    Re-check a serialized obstruction against g using only its JSON form:
    t-join shape, loop-free quotient, phi constant on identified pairs,
    homomorphism into g and the parity demanded by the kind.
    """
    try:
        kind = ObstructionKind(data["kind"])
        tjoin = Graph(int(data["tjoin"]["n"]), [tuple(e) for e in data["tjoin"]["edges"]])
        identify = [tuple(p) for p in data["identify"]]
        phi = [int(v) for v in data["phi"]]
        if any(len(p) != 2 or not all(0 <= v < tjoin.n for v in p) for p in identify):
            return False
        host, vertex_map = identify_vertices(tjoin, identify)
    except (KeyError, TypeError, ValueError, IndexError):
        return False
    if len(phi) != tjoin.n:
        return False
    tri = count_triangles(tjoin)
    if tjoin.m != 2 * tjoin.n - 3 or tri != tjoin.n - 2:
        return False
    if (tri % 2 == 1) != (kind is ObstructionKind.ODD_DONUT):
        return False
    if any(phi[a] != phi[b] for a, b in identify):
        return False
    try:
        if not verify_homomorphism(phi, tjoin, g):
            return False
    except GraphInvariantError:
        return False
    host_map = [0] * host.n
    for v, hv in enumerate(vertex_map):
        host_map[hv] = phi[v]
    return verify_homomorphism(host_map, host, g)
