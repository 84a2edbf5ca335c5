import networkx as nx
import pytest
from hypothesis import given, settings

from apps.orientation.classes import (
    ORACLE_SETS,
    AtlasRow,
    ClassProfile,
    atlas,
    atlas_frame,
    atlas_to_json,
    bipartite_orientation,
    class_profile,
    degree_two_orientation,
    format_atlas,
    is_complete_multipartite,
    is_k4_free,
    is_locally_bipartite,
    orientation_from_coloring,
    three_coloring,
    unicyclic_orientation,
)
from apps.orientation.families import gen_standard
from apps.orientation.patterns import SIMPLE_SETS, Pattern, brute_force_orientable, violations
from apps.orientation.solver import is_orientable
from libs.graph.core import Graph, disjoint_union
from libs.graph.errors import GraphInvariantError, OracleCapExceeded
from graph_strategies import all_graphs, complete, cycle, graphs, path, random_graphs, star

B1, B2, B3, T3, C3 = Pattern.B1, Pattern.B2, Pattern.B3, Pattern.T3, Pattern.C3


def _rows(g, **kw):
    return {r.forbid: r for r in atlas(g, **kw)}


def test_profiles(c5, k4, wheel5):
    assert class_profile(c5) == ClassProfile(
        unicyclic_per_component=True, triangle_free=True, bipartite=False, max_degree_le_2=True,
        star_or_triangle_components=False, k4_free=True, locally_bipartite=True,
        complete_components=False, complete_multipartite=False)
    assert class_profile(k4) == ClassProfile(
        unicyclic_per_component=False, triangle_free=False, bipartite=False, max_degree_le_2=False,
        star_or_triangle_components=False, k4_free=False, locally_bipartite=False,
        complete_components=True, complete_multipartite=True)
    p = class_profile(wheel5)
    assert p.k4_free and not p.locally_bipartite and not p.complete_multipartite


def test_star_and_triangle_components():
    g = disjoint_union(star(4), complete(3), Graph(1), complete(2))
    assert class_profile(g).star_or_triangle_components
    assert not class_profile(path(4)).star_or_triangle_components


def test_small_predicates():
    assert is_k4_free(cycle(6)) and not is_k4_free(complete(5))
    assert is_locally_bipartite(gen_standard("wheel", 4))
    assert is_complete_multipartite(gen_standard("complete_multipartite", [2, 2, 3]))
    assert not is_complete_multipartite(path(4))


def test_three_coloring(wheel4, wheel5, petersen):
    for g in (wheel4, petersen, cycle(7)):
        col = three_coloring(g)
        assert col is not None
        assert all(col[u] != col[v] for u, v in g.edges)
    assert three_coloring(wheel5) is None
    with pytest.raises(OracleCapExceeded):
        three_coloring(complete(5), cap=4)


def test_constructive_orientations(wheel4, c5):
    g = disjoint_union(c5, star(3), path(4), Graph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]))
    o = unicyclic_orientation(g)
    assert violations(o, {B1, T3}) == []
    assert all(sum(1 for a in o.arcs if a[1] == v) <= 1 for v in g.vertices)
    assert violations(o.reversed(), {B2, T3}) == []

    h = disjoint_union(c5, path(4), Graph(1), complete(3))
    assert violations(degree_two_orientation(h), {B1, B2, T3}) == []

    for b in (cycle(6), gen_standard("complete_bipartite", [2, 3])):
        assert violations(bipartite_orientation(b), {B3, T3, C3}) == []

    o = orientation_from_coloring(wheel4, three_coloring(wheel4))
    assert violations(o, {T3}) == []


def test_constructive_orientation_preconditions(k4, c5):
    with pytest.raises(GraphInvariantError):
        unicyclic_orientation(k4)
    with pytest.raises(GraphInvariantError):
        degree_two_orientation(star(3))
    with pytest.raises(GraphInvariantError):
        bipartite_orientation(c5)
    with pytest.raises(GraphInvariantError):
        orientation_from_coloring(c5, [0, 1, 0, 1, 0])


def test_atlas_examples(c5):
    rows = _rows(c5)
    assert len(rows) == len(SIMPLE_SETS) + len(ORACLE_SETS)
    assert (rows["B1,T3"].decision, rows["B1,T3"].agree) == ("yes", True)

    k14 = _rows(star(4))
    assert k14["B1,B3,T3"].decision == "yes"
    assert k14["B1,B2,T3"].decision == "no"
    assert k14["B1,B2,T3"].agree

    c6 = _rows(cycle(6))
    assert c6["B3,T3,C3"].method == "oracle"
    assert c6["B3,T3,C3"].decision == "yes"
    assert c6["C3"].decision == "yes"


def test_helly_circular_arc_row(hajos, wheel4):
    assert _rows(hajos)["B1,B2,C3"].decision == "no"
    assert _rows(wheel4)["B1,B2,C3"].decision == "no"
    assert brute_force_orientable(wheel4, {B1, B2, C3}) is None
    assert _rows(cycle(5))["B1,B2,C3"].decision == "yes"


def test_t3_row_bounds(wheel5, wheel4, k4):
    assert _rows(wheel4)["T3"].decision == "yes"
    # K4-free and locally bipartite fail, so T3 must be no
    assert _rows(k4)["T3"].decision == "no"
    w5 = _rows(wheel5)["T3"]
    assert (w5.decision, w5.agree) == ("no", True)


def _assert_atlas_consistent(g):
    rows = atlas(g)
    assert [r.forbid for r in rows if r.agree is False] == []
    by = {r.forbid: r for r in rows}
    assert by["B1"].decision == by["B2"].decision
    assert by["B1,B3"].decision == by["B2,B3"].decision
    col = three_coloring(g)
    if col is not None:
        assert by["T3"].decision == "yes"
    if by["B3,T3"].decision == "yes":
        assert col is not None


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_atlas_exhaustive(n):
    for g in all_graphs(n):
        _assert_atlas_consistent(g)


@pytest.mark.slow
def test_atlas_five_vertices():
    for g in all_graphs(5):
        _assert_atlas_consistent(g)


@given(graphs(max_n=7, max_m=9))
@settings(max_examples=40, deadline=None)
def test_atlas_random(g):
    _assert_atlas_consistent(g)


@given(graphs(max_n=7, max_m=9))
@settings(max_examples=40, deadline=None)
def test_triangle_free_unicyclic_row(g):
    p = class_profile(g)
    expected = p.triangle_free and p.unicyclic_per_component
    assert (brute_force_orientable(g, {B1, C3, T3}) is not None) == expected


def _assert_structural_rows(g):
    p = class_profile(g)
    assert is_orientable(g, {B1, T3}) == p.unicyclic_per_component
    assert is_orientable(g, {B1, B2, T3}) == p.max_degree_le_2
    assert is_orientable(g, {B1, B3, T3}) == p.star_or_triangle_components
    assert is_orientable(g, {B1, B2, B3}) == p.complete_components
    assert is_orientable(g, {B1, B3}) == is_orientable(g, {B2, B3})
    assert is_orientable(g, {B1, T3}) == is_orientable(g, {B2, T3})
    if is_orientable(g, {T3}):
        assert p.k4_free and p.locally_bipartite


def test_solver_rows_match_structural_predicates():
    for g in (cycle(7), star(5), complete(4), gen_standard("petersen"), disjoint_union(complete(3), star(2))):
        _assert_structural_rows(g)


def test_structural_rows_up_to_seven_vertices():
    for h in nx.graph_atlas_g():
        _assert_structural_rows(Graph.from_networkx(h))


@pytest.mark.slow
def test_structural_rows_labelled_six_vertices():
    for g in all_graphs(6):
        _assert_structural_rows(g)


def test_structural_rows_random():
    for g in random_graphs(seed=7, count=500, max_n=12):
        _assert_structural_rows(g)


def test_three_colourable_graphs_avoid_t3():
    seen = 0
    for g in random_graphs(seed=11, count=200, max_n=11):
        if three_coloring(g) is not None:
            seen += 1
            assert is_orientable(g, {T3})
    assert seen > 0


def test_triangle_free_unicyclic_row_seeded():
    for g in random_graphs(seed=13, count=120, max_n=10, max_m=14):
        p = class_profile(g)
        expected = p.triangle_free and p.unicyclic_per_component
        assert (brute_force_orientable(g, {B1, C3, T3}, cap=14) is not None) == expected


def test_skipped_rows_above_cap(k4):
    rows = atlas(k4, oracle_cap=3)
    skipped = [r for r in rows if r.decision == "skipped"]
    assert len(skipped) == len(ORACLE_SETS)
    assert all(r.method == "oracle" and r.agree is None for r in skipped)
    assert all(r.decision != "skipped" for r in rows if r.method == "solver")


def test_atlas_outputs(c5):
    rows = atlas(c5)
    text = format_atlas(rows)
    lines = text.splitlines()
    assert len(lines) == len(rows) + 1
    assert "forbid" in lines[0] and "agree" in lines[0]
    assert "{B1,T3}" in text

    frame = atlas_frame(rows)
    assert list(frame.columns) == list(AtlasRow.__dataclass_fields__)
    assert len(frame) == len(rows)
    assert lines[0].split() == list(frame.columns)
    assert frame["forbid"].tolist() == [r.forbid for r in rows]

    data = atlas_to_json(rows)
    assert data[0]["forbid"] == rows[0].forbid
    assert {d["decision"] for d in data} <= {"yes", "no", "skipped"}
