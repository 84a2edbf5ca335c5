import pytest
from hypothesis import given, settings

from apps.orientation.constraint import (
    ConstraintDigraph,
    arc_count_bound,
    build_constraint_digraph,
    dual_vertex,
    out_degree_bound,
    reachable_from,
)
from apps.orientation.patterns import SIMPLE_SETS, Pattern
from libs.graph.core import Graph
from libs.graph.errors import GraphInvariantError, NonSimpleForbiddenSetError
from graph_strategies import graphs, random_graphs, star

B1, B2, B3, T3 = Pattern.B1, Pattern.B2, Pattern.B3, Pattern.T3


def test_p3_arc_sets(p3):
    assert build_constraint_digraph(p3, {B1}).arc_pairs() == [((0, 1), (1, 2)), ((2, 1), (1, 0))]
    assert build_constraint_digraph(p3, {B2}).arc_pairs() == [((1, 0), (2, 1)), ((1, 2), (0, 1))]
    assert build_constraint_digraph(p3, {B3}).arc_pairs() == [
        ((0, 1), (2, 1)), ((1, 0), (1, 2)), ((1, 2), (1, 0)), ((2, 1), (0, 1))]
    assert build_constraint_digraph(p3, {T3}).num_arcs == 0


def test_k3_t3_has_twelve_symmetric_arcs(k3):
    d = build_constraint_digraph(k3, {T3})
    assert d.num_vertices == 6
    assert d.num_arcs == 12
    for a, b in d.arcs():
        assert d.has_arc(b, a)
    # triangle-only patterns: path patterns contribute nothing on K3
    assert build_constraint_digraph(k3, {B1, B2, B3}).num_arcs == 0


def test_star_counts():
    k13 = star(3)
    assert build_constraint_digraph(k13, {B1}).num_arcs == 6
    assert build_constraint_digraph(k13, {B2}).num_arcs == 6
    assert build_constraint_digraph(k13, {B3}).num_arcs == 12


def test_petersen_b1_arc_count(petersen):
    # 10 centres, 6 ordered pairs of non-adjacent neighbours each
    d = build_constraint_digraph(petersen, {B1})
    assert d.num_arcs == 60
    assert d.num_arcs > petersen.m * petersen.max_degree()
    assert d.num_arcs <= arc_count_bound(petersen)


def test_dump(p3):
    assert build_constraint_digraph(p3, {B1}).dump() == "0,1 -> 1,2\n2,1 -> 1,0\n"
    assert build_constraint_digraph(Graph(2, [(0, 1)]), {B1}).dump() == ""


def test_vertex_encoding(k3):
    d = build_constraint_digraph(k3, {T3})
    for k in range(d.num_vertices):
        x, y = d.pair(k)
        assert d.vertex_id(x, y) == k
        assert d.pair(ConstraintDigraph.dual(k)) == (y, x)
    assert dual_vertex(d, (2, 0)) == (0, 2)
    with pytest.raises(GraphInvariantError):
        d.vertex_id(0, 0)
    with pytest.raises(GraphInvariantError):
        dual_vertex(build_constraint_digraph(Graph(3, [(0, 1)]), {B1}), (1, 2))


def test_rejects_non_simple_sets(k3):
    with pytest.raises(NonSimpleForbiddenSetError):
        build_constraint_digraph(k3, {T3, Pattern.C3})


def _assert_skew_and_bounds(g, f):
    d = build_constraint_digraph(g, f)
    assert d.num_vertices == 2 * g.m
    arcs = set(d.arcs())
    assert len(arcs) == d.num_arcs
    for a, b in arcs:
        assert (b ^ 1, a ^ 1) in arcs
        assert a != b
    for k in range(d.num_vertices):
        assert len(d.successors(k)) <= out_degree_bound(g, *d.pair(k))
    assert d.num_arcs <= arc_count_bound(g)


@given(graphs(max_n=12))
@settings(max_examples=100, deadline=None)
def test_skew_symmetry_and_size_bounds(g):
    for f in SIMPLE_SETS:
        _assert_skew_and_bounds(g, f)


def test_skew_symmetry_and_size_bounds_up_to_fifty_vertices():
    # arc sets are unions, so the full set bounds every subset
    sets = [{B1}, {B2}, {B3}, {T3}, {B1, B2, B3, T3}]
    for g in random_graphs(seed=3, count=1000, max_n=50, max_m=120):
        for f in sets:
            _assert_skew_and_bounds(g, f)


@pytest.mark.slow
def test_skew_symmetry_and_size_bounds_dense():
    for g in random_graphs(seed=5, count=1000, max_n=50, max_m=400):
        for f in SIMPLE_SETS:
            _assert_skew_and_bounds(g, f)


@given(graphs(max_n=10))
@settings(max_examples=60, deadline=None)
def test_t3_digraph_is_symmetric(g):
    d = build_constraint_digraph(g, {T3})
    for a, b in d.arcs():
        assert d.has_arc(b, a)


@given(graphs(max_n=10))
@settings(max_examples=60, deadline=None)
def test_union_of_sets_is_union_of_arcs(g):
    singles = {p: set(build_constraint_digraph(g, {p}).arcs()) for p in (B1, B2, B3, T3)}
    for f in SIMPLE_SETS:
        assert set(build_constraint_digraph(g, f).arcs()) == set().union(*(singles[p] for p in f))


def test_reachable_from(p3):
    d = build_constraint_digraph(p3, {B1})
    src = d.vertex_id(0, 1)
    assert reachable_from(d, src) == {src, d.vertex_id(1, 2)}


def test_fifty_vertex_graph_within_bound():
    g = Graph(50, [(i, (i + 1) % 50) for i in range(50)] + [(i, (i + 7) % 50) for i in range(50)])
    for f in SIMPLE_SETS:
        d = build_constraint_digraph(g, f)
        assert d.num_arcs <= arc_count_bound(g)
