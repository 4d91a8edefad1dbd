import pytest
from hypothesis import given, settings

from conftest import simple_graphs
from graph_core import (Graph, GraphClassProfile, GraphFormatError, NonSimpleGraphError, components, degree,
                        detect_format, diameter, digest, is_outerplanar, is_planar, parse_graph, parse_graph6_lines,
                        profile, serialize_graph, subgraph)
from families import family, generate


def test_parse_edge_list_keeps_input_order():
    g = parse_graph("4; 0-1 1-2 2-3 3-0")
    assert g.n == 4
    assert g.m == 4
    assert g.edges == ((0, 1), (1, 2), (2, 3), (3, 0))
    assert g.edge_id(0, 3) == 3


def test_parse_edge_list_accepts_newlines_and_comments():
    text = "# a path\n3\n0-1  # first\n1-2\n"
    g = parse_graph(text)
    assert g.edges == ((0, 1), (1, 2))


def test_parse_edge_list_errors():
    with pytest.raises(NonSimpleGraphError):
        parse_graph("3; 0-0")
    with pytest.raises(NonSimpleGraphError):
        parse_graph("3; 0-1 1-0")
    with pytest.raises(GraphFormatError):
        parse_graph("3; 0-3")
    with pytest.raises(GraphFormatError):
        parse_graph("3; 0_1")
    with pytest.raises(GraphFormatError):
        parse_graph("")
    with pytest.raises(GraphFormatError):
        parse_graph("x; 0-1")


def test_parse_graph6():
    k4 = parse_graph("C~", "graph6")
    assert (k4.n, k4.m) == (4, 6)
    k3 = parse_graph("Bw\n", "graph6")
    assert set(k3.edges) == {(0, 1), (0, 2), (1, 2)}
    with pytest.raises(GraphFormatError):
        parse_graph("", "graph6")
    with pytest.raises(GraphFormatError):
        parse_graph("0-1", "unknown")


def test_parse_graph6_lines_and_detect_format():
    graphs = parse_graph6_lines("C~\n\nBw\n")
    assert [g.m for g in graphs] == [6, 3]
    assert detect_format("C~") == "graph6"
    assert detect_format("4; 0-1") == "edge_list"
    assert detect_format("1") == "edge_list"


def test_degree():
    g = Graph(3, [(0, 1), (0, 2)])
    assert degree(g, 0) == 2
    assert degree(g, 2) == 1
    with pytest.raises(IndexError):
        degree(g, 3)


def test_graph_is_immutable():
    g = Graph(2, [(0, 1)])
    with pytest.raises(AttributeError):
        g.n = 3


def test_planarity_of_named_graphs():
    assert is_planar(generate(family("complete", 4)))
    assert not is_planar(generate(family("complete", 5)))
    assert not is_planar(generate(family("complete_bipartite", 3, 3)))
    assert is_planar(generate(family("hypercube", 3)))


def test_outerplanarity_of_named_graphs():
    assert is_outerplanar(generate(family("fan", 6)))
    assert is_outerplanar(generate(family("cycle", 7)))
    assert not is_outerplanar(generate(family("complete", 4)))
    assert not is_outerplanar(generate(family("complete_bipartite", 2, 3)))


def test_profile_of_k4():
    p = profile(generate(family("complete", 4)))
    assert p.is_planar and not p.is_outerplanar
    assert not p.is_bipartite and not p.is_triangle_free
    assert p.max_degree == 3
    assert p.diameter == 1
    assert p.is_connected


def test_profile_of_c4(c4):
    p = profile(c4)
    assert p.is_outerplanar and p.is_bipartite and p.is_triangle_free
    assert p.diameter == 2


def test_disconnected_graph_has_no_diameter():
    g = Graph(4, [(0, 1), (2, 3)])
    assert diameter(g) is None
    assert components(g) == [[0, 1], [2, 3]]
    assert profile(g).diameter is None


def test_profile_rejects_inconsistent_predicates():
    with pytest.raises(ValueError):
        GraphClassProfile(is_planar=False, is_outerplanar=True, is_bipartite=False, is_triangle_free=False,
                          max_degree=2, diameter=1, is_connected=True)
    with pytest.raises(ValueError):
        GraphClassProfile(is_planar=True, is_outerplanar=True, is_bipartite=True, is_triangle_free=True,
                          max_degree=1, diameter=None, is_connected=True)


def test_serialize_and_digest(c4):
    assert serialize_graph(c4) == "4; 0-1 1-2 2-3 3-0"
    assert digest(c4) == digest(parse_graph("4;0-1 1-2 2-3 3-0"))
    assert digest(c4) != digest(Graph(4, [(0, 1), (1, 2), (2, 3)]))
    g6 = serialize_graph(c4, "graph6")
    assert set(parse_graph(g6, "graph6").edges) == {(0, 1), (1, 2), (2, 3), (0, 3)}


def test_subgraph_relabels_in_given_order(c4):
    h = subgraph(c4, [2, 3, 0])
    assert h.n == 3
    assert set(h.edges) == {(0, 1), (1, 2)}
    assert h.labels == ("2", "3", "0")


@settings(max_examples=60, deadline=None)
@given(simple_graphs())
def test_profile_implications(g):
    p = profile(g)
    if p.is_outerplanar:
        assert p.is_planar
        assert g.n < 2 or g.m <= 2 * g.n - 3
    if p.is_planar and g.n >= 3:
        assert g.m <= 3 * g.n - 6
    if p.is_bipartite:
        assert p.is_triangle_free
    assert p.max_degree == max(g.degrees(), default=0)


@settings(max_examples=60, deadline=None)
@given(simple_graphs())
def test_edge_list_serialization_reparses(g):
    assert parse_graph(serialize_graph(g)) == g


@settings(max_examples=60, deadline=None)
@given(simple_graphs())
def test_graph6_serialization_reparses_up_to_edge_order(g):
    h = parse_graph(serialize_graph(g, "graph6"), "graph6")
    assert h.n == g.n
    assert {tuple(sorted(e)) for e in h.edges} == {tuple(sorted(e)) for e in g.edges}
