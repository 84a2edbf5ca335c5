"""
Oriented three-vertex patterns: classification, F-freeness check and the
exhaustive orientation oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from apps.orientation import config
from libs.graph.core import Arc, Graph, Orientation
from libs.graph.errors import (
    GraphFormatError,
    GraphInvariantError,
    NonSimpleForbiddenSetError,
    OracleCapExceeded,
)
from libs.utils.logging_setup import get_logger

logger = get_logger("orient.patterns")


class Pattern(str, Enum):
    B1 = "B1"      # both arcs into the centre of P3
    B2 = "B2"      # both arcs out of the centre
    B3 = "B3"      # directed P3
    T3 = "T3"      # transitive tournament
    C3 = "C3"      # directed triangle
    K1K2 = "K1K2"  # lone arc plus an isolated vertex


PATTERN_ORDER: Tuple[Pattern, ...] = tuple(Pattern)
SIMPLE_PATTERNS: FrozenSet[Pattern] = frozenset({Pattern.B1, Pattern.B2, Pattern.B3, Pattern.T3})

ForbiddenSet = FrozenSet[Pattern]

# All 15 nonempty simple sets, by size then in pattern order
SIMPLE_SETS: Tuple[ForbiddenSet, ...] = tuple(
    frozenset(c)
    for r in range(1, 5)
    for c in itertools.combinations((Pattern.B1, Pattern.B2, Pattern.B3, Pattern.T3), r)
)

_PATH_PATTERNS = frozenset({Pattern.B1, Pattern.B2, Pattern.B3})
_TRIANGLE_PATTERNS = frozenset({Pattern.T3, Pattern.C3})


def is_simple(f: Iterable[Pattern]) -> bool:
    return set(f) <= SIMPLE_PATTERNS


def require_simple(f: Iterable[Pattern]) -> ForbiddenSet:
    f = frozenset(f)
    if not is_simple(f):
        extra = ",".join(p.value for p in PATTERN_ORDER if p in f - SIMPLE_PATTERNS)
        raise NonSimpleForbiddenSetError(
            f"forbidden set contains {extra}; only B1, B2, B3, T3 are supported here "
            f"(use the oracle-backed atlas for C3 / K1K2)")
    return f


def parse_forbidden_set(text: str) -> ForbiddenSet:
    """'B1,T3' -> {B1, T3}; names are case-insensitive"""
    out = set()
    for token in text.split(","):
        name = token.strip().upper()
        if not name:
            continue
        try:
            out.add(Pattern(name))
        except ValueError:
            raise GraphFormatError(
                f"unknown pattern {token.strip()!r}; expected one of "
                f"{', '.join(p.value for p in PATTERN_ORDER)}") from None
    return frozenset(out)


def format_forbidden_set(f: Iterable[Pattern]) -> str:
    f = set(f)
    return ",".join(p.value for p in PATTERN_ORDER if p in f)


@dataclass(frozen=True)
class Violation:
    triple: Tuple[int, int, int]
    pattern: Pattern


def _classify(o: Orientation, a: int, b: int, c: int) -> Optional[Pattern]:
    g = o.base
    present = [(u, v) for u, v in ((a, b), (b, c), (a, c)) if g.has_edge(u, v)]
    if not present:
        return None
    if len(present) == 1:
        return Pattern.K1K2
    arcs = [o.arcs[g.edge_index(u, v)] for u, v in present]
    if len(present) == 2:
        centre = (set(present[0]) & set(present[1])).pop()
        inward = sum(1 for _, head in arcs if head == centre)
        return (Pattern.B2, Pattern.B3, Pattern.B1)[inward]
    out_deg = {a: 0, b: 0, c: 0}
    for tail, _ in arcs:
        out_deg[tail] += 1
    return Pattern.T3 if 2 in out_deg.values() else Pattern.C3


def induced_pattern(o: Orientation, triple: Sequence[int]) -> Optional[Pattern]:
    """Pattern induced on three distinct vertices; None when they span no edge"""
    if len(triple) != 3 or len(set(triple)) != 3:
        raise GraphInvariantError(f"expected three distinct vertices, got {tuple(triple)}")
    for v in triple:
        if not 0 <= v < o.base.n:
            raise GraphInvariantError(f"vertex {v} out of range [0, {o.base.n})")
    return _classify(o, *triple)


def violations(o: Orientation, f: Iterable[Pattern]) -> List[Violation]:
    """
    All triples inducing a pattern of f, sorted.

    Walks pairs of incident edges (paths and triangles) and, for K1K2,
    edge x non-adjacent vertex pairs instead of all C(n,3) triples.
    """
    f = frozenset(f)
    g = o.base
    found: List[Violation] = []
    if f & (_PATH_PATTERNS | _TRIANGLE_PATTERNS):
        for y in g.vertices:
            nbrs = sorted(g.neighbors(y))
            for x, z in itertools.combinations(nbrs, 2):
                if g.has_edge(x, z):
                    # triangle: report once, from its smallest vertex
                    if y > x:
                        continue
                elif not f & _PATH_PATTERNS:
                    continue
                p = _classify(o, x, y, z)
                if p in f:
                    found.append(Violation(tuple(sorted((x, y, z))), p))
    if Pattern.K1K2 in f:
        for u, v in g.edges:
            near = g.neighbors(u) | g.neighbors(v)
            for w in g.vertices:
                if w != u and w != v and w not in near:
                    found.append(Violation(tuple(sorted((u, v, w))), Pattern.K1K2))
    found.sort(key=lambda viol: (viol.triple, PATTERN_ORDER.index(viol.pattern)))
    return found


def is_free(o: Orientation, f: Iterable[Pattern]) -> bool:
    return not violations(o, f)


def orientation_from_mask(g: Graph, mask: int) -> Orientation:
    """Bit i set: edge i is reversed with respect to its canonical (min, max) order"""
    return Orientation(g, tuple((v, u) if mask >> i & 1 else (u, v) for i, (u, v) in enumerate(g.edges)))


def iter_orientations(g: Graph) -> Iterator[Orientation]:
    """All 2^m orientations in binary counter order"""
    for mask in range(1 << g.m):
        yield orientation_from_mask(g, mask)


def _completion_checks(g: Graph, f: ForbiddenSet) -> List[List[Tuple[int, Tuple[int, ...]]]]:
    """
    For each edge index i: the triples whose pattern is fully decided once
    edges i..m-1 are oriented (i is their smallest edge index).

    Entries are (kind, data): kind 1 = lone edge, 2 = path (centre, e1, e2),
    3 = triangle (a, b, c, e_ab, e_bc, e_ac).
    """
    checks: List[List[Tuple[int, Tuple[int, ...]]]] = [[] for _ in range(g.m)]
    want_paths = bool(f & _PATH_PATTERNS)
    want_triangles = bool(f & _TRIANGLE_PATTERNS)
    if want_paths or want_triangles:
        for y in g.vertices:
            for x, z in itertools.combinations(sorted(g.neighbors(y)), 2):
                e1, e2 = g.edge_index(x, y), g.edge_index(y, z)
                if g.has_edge(x, z):
                    if not want_triangles or y > x:
                        continue
                    a, b, c = sorted((x, y, z))
                    es = (g.edge_index(a, b), g.edge_index(b, c), g.edge_index(a, c))
                    checks[min(es)].append((3, (a, b, c) + es))
                elif want_paths:
                    checks[min(e1, e2)].append((2, (y, e1, e2)))
    if Pattern.K1K2 in f:
        for i, (u, v) in enumerate(g.edges):
            near = g.neighbors(u) | g.neighbors(v)
            if any(w not in near and w != u and w != v for w in g.vertices):
                checks[i].append((1, ()))
    return checks


def _pattern_of_check(kind: int, data: Tuple[int, ...], arcs: List[Optional[Arc]]) -> Pattern:
    if kind == 1:
        return Pattern.K1K2
    if kind == 2:
        centre, e1, e2 = data
        inward = (arcs[e1][1] == centre) + (arcs[e2][1] == centre)
        return (Pattern.B2, Pattern.B3, Pattern.B1)[inward]
    a, b, c, *es = data
    tails = [arcs[e][0] for e in es]
    return Pattern.T3 if any(tails.count(v) == 2 for v in (a, b, c)) else Pattern.C3


def brute_force_orientable(g: Graph, f: Iterable[Pattern], cap: Optional[int] = None) -> Optional[Orientation]:
    """
    First F-free orientation in binary counter order, or None.

    The counter's most significant bit is the last edge, so a depth-first
    search that fixes edges from the last one down, trying the canonical
    direction before the reversed one, meets orientations in counter order;
    partial assignments that already contain a forbidden triple are cut.
    """
    f = frozenset(f)
    cap = config.ORACLE_EDGE_CAP if cap is None else cap
    if g.m > cap:
        raise OracleCapExceeded(f"oracle cap is {cap} edges, graph has {g.m}")
    logger.debug("oracle search", extra={"payload": {"n": g.n, "m": g.m, "forbid": format_forbidden_set(f)}})

    checks = _completion_checks(g, f)
    arcs: List[Optional[Arc]] = [None] * g.m

    def extend(i: int) -> bool:
        if i < 0:
            return True
        u, v = g.edges[i]
        for arc in ((u, v), (v, u)):
            arcs[i] = arc
            if all(_pattern_of_check(kind, data, arcs) not in f for kind, data in checks[i]):
                if extend(i - 1):
                    return True
        arcs[i] = None
        return False

    if extend(g.m - 1):
        return Orientation(g, tuple(arcs))
    return None


def pull_back_orientation(phi: Sequence[int], g: Graph, o_h: Orientation) -> Orientation:
    """
    Orientation of g induced by a homomorphism phi: g -> H and an
    orientation of H: xy is oriented x -> y iff phi(x) -> phi(y).

    When every forbidden pattern is a tournament (T3, C3), an F-free
    orientation of H pulls back to an F-free orientation of g.
    """
    h = o_h.base
    arcs = []
    for x, y in g.edges:
        if not h.has_edge(phi[x], phi[y]):
            raise GraphInvariantError(f"phi does not map edge ({x}, {y}) to an edge")
        arcs.append((x, y) if o_h.points(phi[x], phi[y]) else (y, x))
    return Orientation(g, tuple(arcs))


def pattern_counts(o: Orientation) -> Dict[Pattern, int]:
    """Number of triples inducing each pattern"""
    counts = {p: 0 for p in PATTERN_ORDER}
    for viol in violations(o, PATTERN_ORDER):
        counts[viol.pattern] += 1
    return counts
