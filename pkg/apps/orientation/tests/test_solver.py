import pytest
from hypothesis import given, settings

from apps.orientation.constraint import ConstraintDigraph, build_constraint_digraph, reachable_from
from apps.orientation.patterns import SIMPLE_SETS, Pattern, brute_force_orientable, violations
from apps.orientation.solver import (
    NoCertificate,
    YesCertificate,
    certificate_from_json,
    certificate_to_json,
    component_map,
    extract_contradicting_path,
    is_orientable,
    mark_components,
    scc_reverse_topological,
    solve,
    solve_components,
    verify_certificate,
)
from libs.graph.core import Graph, Orientation, disjoint_union
from libs.graph.errors import NonSimpleForbiddenSetError, PathPreconditionError
from graph_strategies import all_graphs, complete, cycle, graphs

B1, B2, B3, T3 = Pattern.B1, Pattern.B2, Pattern.B3, Pattern.T3


def _check_scc_order(d, comps):
    comp_of = component_map(comps, d.num_vertices)
    assert sorted(v for c in comps for v in c) == list(range(d.num_vertices))
    for a, b in d.arcs():
        # a reaches b, so b's component is emitted no later than a's
        assert comp_of[b] <= comp_of[a]
    for comp in comps:
        reach = reachable_from(d, comp[0])
        for v in comp:
            assert comp[0] in reachable_from(d, v)
            assert v in reach
    return comp_of


def test_scc_edgeless():
    d = build_constraint_digraph(Graph(4, [(0, 1), (2, 3)]), {B1})
    assert d.num_arcs == 0
    assert sorted(scc_reverse_topological(d)) == [[0], [1], [2], [3]]


def test_scc_cycle_plus_isolated():
    d = ConstraintDigraph(Graph(3, [(0, 1), (1, 2)]), frozenset({B1}), ((1,), (2,), (0,), ()))
    comps = scc_reverse_topological(d)
    assert sorted(comps) == [[0, 1, 2], [3]]


def test_scc_order_on_k3(k3):
    d = build_constraint_digraph(k3, {T3})
    _check_scc_order(d, scc_reverse_topological(d))


@given(graphs(max_n=9))
@settings(max_examples=80, deadline=None)
def test_scc_order_and_marking(g):
    for f in SIMPLE_SETS:
        d = build_constraint_digraph(g, f)
        comps = scc_reverse_topological(d)
        comp_of = _check_scc_order(d, comps)
        marks = mark_components(comps, comp_of)
        if marks is None:
            continue
        for ci, comp in enumerate(comps):
            assert marks[ci] != marks[comp_of[comp[0] ^ 1]]
        for a, b in d.arcs():
            if marks[comp_of[a]]:
                assert marks[comp_of[b]]


def test_solver_examples(k4, wheel5):
    assert isinstance(solve(k4, {T3}), NoCertificate)
    assert isinstance(solve(cycle(4), {B1, B2}), YesCertificate)
    assert isinstance(solve(Graph(2, [(0, 1)]), {B1, B2, B3, T3}), YesCertificate)
    assert isinstance(solve(wheel5, {T3}), NoCertificate)


def test_empty_and_edgeless_graphs():
    for g in (Graph(0), Graph(5)):
        cert = solve(g, {T3})
        assert isinstance(cert, YesCertificate)
        assert cert.orientation.arcs == ()


def test_k4_witness_is_smallest_edge_with_shortest_path(k4):
    cert = solve(k4, {T3})
    assert cert.answer == "no"
    assert cert.edge == (0, 1)
    assert cert.path[0] == (0, 1) and cert.path[-1] == (1, 0)
    assert len(cert.path) == 4
    assert verify_certificate(k4, {T3}, cert)


def test_grotzsch_is_t3_orientable(grotzsch):
    cert = solve(grotzsch, {T3})
    assert cert.answer == "yes"
    assert violations(cert.orientation, {T3}) == []


def test_contradicting_path_on_wheel_rim(wheel5):
    d = build_constraint_digraph(wheel5, {T3})
    path = extract_contradicting_path(d, (1, 2))
    assert len(path) >= 3
    assert path[0] == (1, 2) and path[-1] == (2, 1)
    for a, b in zip(path, path[1:]):
        assert d.has_arc(d.vertex_id(*a), d.vertex_id(*b))
    assert len(set(path)) == len(path)


def test_contradicting_path_precondition():
    d = build_constraint_digraph(cycle(4), {B1, B2})
    with pytest.raises(PathPreconditionError):
        extract_contradicting_path(d, (0, 1))


def test_contradicting_path_on_k4(k4):
    d = build_constraint_digraph(k4, {T3})
    for x, y in k4.edges:
        path = extract_contradicting_path(d, (x, y))
        assert path[0] == (x, y) and path[-1] == (y, x)


def test_rejects_non_simple_sets(k3):
    with pytest.raises(NonSimpleForbiddenSetError):
        solve(k3, {Pattern.C3})


def test_certificate_json(k4, c5):
    no = solve(k4, {T3})
    data = certificate_to_json(no)
    assert data == {"answer": "no", "edge": [0, 1], "path": [list(a) for a in no.path]}
    assert certificate_from_json(data, k4) == no
    yes = solve(c5, {B1, T3})
    data = certificate_to_json(yes)
    assert data["answer"] == "yes"
    assert len(data["orientation"]) == 5
    assert certificate_from_json(data, c5) == yes


def test_verify_certificate_rejects_tampering(k4, c5):
    no = solve(k4, {T3})
    assert not verify_certificate(k4, {T3}, NoCertificate(no.edge, no.path[:-1]))
    assert not verify_certificate(k4, {T3}, NoCertificate(no.edge, (no.path[0], no.path[-1])))
    yes = solve(c5, {B1, T3})
    assert verify_certificate(c5, {B1, T3}, yes)
    sink_at_1 = Orientation.from_arcs(c5, [(0, 1), (2, 1), (2, 3), (3, 4), (4, 0)])
    assert not verify_certificate(c5, {B1, T3}, YesCertificate(sink_at_1))
    assert not verify_certificate(cycle(4), {B1, T3}, yes)


def _assert_agrees_with_oracle(g):
    for f in SIMPLE_SETS:
        cert = solve(g, f)
        oracle = brute_force_orientable(g, f)
        assert (cert.answer == "yes") == (oracle is not None), (g, f)
        assert verify_certificate(g, f, cert)


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4, 5])
def test_oracle_equivalence_exhaustive(n):
    for g in all_graphs(n):
        _assert_agrees_with_oracle(g)


@pytest.mark.slow
def test_oracle_equivalence_six_vertices():
    for g in all_graphs(6):
        _assert_agrees_with_oracle(g)


@given(graphs(max_n=10, max_m=14))
@settings(max_examples=60, deadline=None)
def test_oracle_equivalence_random(g):
    _assert_agrees_with_oracle(g)


@given(graphs(max_n=6), graphs(max_n=6))
@settings(max_examples=60, deadline=None)
def test_disjoint_union(g, h):
    u = disjoint_union(g, h)
    for f in SIMPLE_SETS:
        assert is_orientable(u, f) == (is_orientable(g, f) and is_orientable(h, f))
        per_component = solve_components(u, f)
        assert is_orientable(u, f) == all(c.answer == "yes" for _, c in per_component)


def test_solve_components_relabels():
    g = disjoint_union(complete(4), cycle(5))
    parts = solve_components(g, {T3})
    assert [comp for comp, _ in parts] == [[0, 1, 2, 3], [4, 5, 6, 7, 8]]
    assert [c.answer for _, c in parts] == ["no", "yes"]
