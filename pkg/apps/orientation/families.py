"""
Deterministic generators: t-joins, donuts, Moebius donuts, wheels and a
small corpus of standard graphs.

T-join vertex layout: x_1..x_p are 0..p-1, y_1..y_q are p..p+q-1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, Optional, Sequence, Union

import networkx as nx

from libs.graph.core import Graph, identify_vertices
from libs.graph.errors import GraphInvariantError
from libs.utils.logging_setup import get_logger

logger = get_logger("orient.families")


@dataclass(frozen=True)
class TJoinSpec:
    p: int
    q: int
    merge: str  # '0' advances on P, '1' advances on Q

    def __post_init__(self):
        if self.p < 1 or self.q < 1 or self.p + self.q < 4:
            raise GraphInvariantError(f"need p, q >= 1 and p + q >= 4, got p={self.p} q={self.q}")
        if len(self.merge) != self.p + self.q - 2 or set(self.merge) - {"0", "1"}:
            raise GraphInvariantError(
                f"merge must be a 0/1 string of length {self.p + self.q - 2}, got {self.merge!r}")
        if self.merge.count("0") != self.p - 1:
            raise GraphInvariantError(
                f"merge needs {self.p - 1} zeros and {self.q - 1} ones, got {self.merge!r}")

    @classmethod
    def default(cls, p: int, q: int) -> "TJoinSpec":
        """All P steps first"""
        return cls(p, q, "0" * (p - 1) + "1" * (q - 1))


@dataclass(frozen=True)
class DonutSpec:
    tjoin: TJoinSpec
    mobius: bool = False


def iter_merge_sequences(p: int, q: int) -> Iterator[str]:
    """Every valid merge sequence for paths on p and q vertices"""
    length = p + q - 2
    for ones in itertools.combinations(range(length), q - 1):
        bits = ["0"] * length
        for i in ones:
            bits[i] = "1"
        yield "".join(bits)


def gen_tjoin(spec: TJoinSpec) -> Graph:
    p, q = spec.p, spec.q
    x = list(range(p))
    y = list(range(p, p + q))
    edges = [(x[i], x[i + 1]) for i in range(p - 1)]
    edges += [(y[j], y[j + 1]) for j in range(q - 1)]
    edges.append((x[0], y[0]))
    i = j = 0
    for bit in spec.merge:
        if bit == "0":
            i += 1
        else:
            j += 1
        edges.append((x[i], y[j]))
    return Graph(p + q, edges)


def gen_donut(spec: DonutSpec) -> Graph:
    t = spec.tjoin
    p, q = t.p, t.q
    if not spec.mobius and p == 2 and q == 2:
        raise GraphInvariantError("donut on two 2-vertex paths is excluded (x_1 x_2 would become a loop)")
    x1, xp, y1, yq = 0, p - 1, p, p + q - 1
    pairs = [(x1, yq), (y1, xp)] if spec.mobius else [(x1, xp), (y1, yq)]
    try:
        g, _ = identify_vertices(gen_tjoin(t), pairs)
    except GraphInvariantError as e:
        kind = "Moebius donut" if spec.mobius else "donut"
        raise GraphInvariantError(f"degenerate {kind} p={p} q={q} merge={t.merge!r}: {e}") from e
    logger.debug("donut generated", extra={"payload": {
        "p": p, "q": q, "merge": t.merge, "mobius": spec.mobius, "n": g.n, "m": g.m}})
    return g


def gen_wheel(k: int) -> Graph:
    """Hub 0 joined to the rim cycle 1..k"""
    if k < 3:
        raise GraphInvariantError(f"wheel needs a rim of at least 3 vertices, got {k}")
    rim = [(i, i % k + 1) for i in range(1, k + 1)]
    return Graph(k + 1, rim + [(0, i) for i in range(1, k + 1)])


def mycielski(g: Graph) -> Graph:
    return Graph.from_networkx(nx.mycielskian(g.to_networkx()))


def _hajos() -> Graph:
    # inner triangle 0,1,2; each outer vertex sees one side of it
    return Graph(6, [(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (4, 1), (4, 2), (5, 0), (5, 2)])


Size = Union[int, Sequence[int], None]


def _one(name: str, size: Size, minimum: int = 1) -> int:
    if size is None:
        raise GraphInvariantError(f"{name!r} needs a size")
    if not isinstance(size, int):
        if len(size) != 1:
            raise GraphInvariantError(f"{name!r} takes one size, got {list(size)}")
        size = size[0]
    if size < minimum:
        raise GraphInvariantError(f"{name!r} needs size >= {minimum}, got {size}")
    return size


def _parts(name: str, size: Size) -> Sequence[int]:
    if size is None:
        raise GraphInvariantError(f"{name!r} needs part sizes")
    parts = [size] if isinstance(size, int) else list(size)
    if not parts or any(s < 1 for s in parts):
        raise GraphInvariantError(f"{name!r} needs positive part sizes, got {parts}")
    return parts


def _bipartite(size: Size) -> Graph:
    parts = _parts("complete_bipartite", size)
    if len(parts) != 2:
        raise GraphInvariantError(f"'complete_bipartite' takes two sizes, got {parts}")
    return Graph.from_networkx(nx.complete_bipartite_graph(*parts))


_STANDARD: Dict[str, Callable[[Size], Graph]] = {
    "path": lambda s: Graph.from_networkx(nx.path_graph(_one("path", s))),
    "cycle": lambda s: Graph.from_networkx(nx.cycle_graph(_one("cycle", s, 3))),
    "star": lambda s: Graph.from_networkx(nx.star_graph(_one("star", s))),
    "complete": lambda s: Graph.from_networkx(nx.complete_graph(_one("complete", s))),
    "complete_bipartite": _bipartite,
    "complete_multipartite": lambda s: Graph.from_networkx(
        nx.complete_multipartite_graph(*_parts("complete_multipartite", s))),
    "wheel": lambda s: gen_wheel(_one("wheel", s, 3)),
    "hajos": lambda s: _hajos(),
    "petersen": lambda s: Graph.from_networkx(nx.petersen_graph()),
    "grotzsch": lambda s: mycielski(Graph.from_networkx(nx.cycle_graph(5))),
}

STANDARD_NAMES = tuple(sorted(_STANDARD)) + ("mycielski",)


def gen_standard(name: str, size: Size = None, base: Optional[Graph] = None) -> Graph:
    """
    Named test graph. `size` is the vertex count for path / cycle /
    complete, the leaf count for star, the rim length for wheel and the
    part sizes for the multipartite families. "mycielski" returns the
    Mycielskian of `base`.
    """
    key = name.strip().lower()
    if key == "mycielski":
        if base is None:
            raise GraphInvariantError("'mycielski' needs an input graph")
        return mycielski(base)
    try:
        build = _STANDARD[key]
    except KeyError:
        raise GraphInvariantError(
            f"unknown graph name {name!r}; known: {', '.join(STANDARD_NAMES)}") from None
    return build(size)
