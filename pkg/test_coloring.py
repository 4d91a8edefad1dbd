from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from coloring import (ColoringError, EdgeColoring, color_multiplicities, coloring_report, lemma3_bound, make_coloring,
                      parse_coloring, reverse_coloring, serialize_coloring, unique_color_edges, verify_interval)
from conftest import is_interval_by_definition, simple_graphs
from graph_core import Graph


def test_c4_interval_coloring(c4):
    report = verify_interval(c4, make_coloring([1, 2, 1, 2]))
    assert report.is_proper and report.all_colors_used and report.interval_ok
    assert report.first_violation is None
    assert [(p.min, p.max, p.size) for p in report.palettes] == [(1, 2, 2)] * 4


def test_c4_improper_coloring(c4):
    report = verify_interval(c4, make_coloring([1, 1, 2, 2]))
    assert not report.is_proper
    assert not report.interval_ok
    assert "vertex 1" in report.first_violation


def test_gap_in_palette(p4):
    # vertex 1 sees {1, 3}
    report = verify_interval(p4, make_coloring([1, 3, 2]))
    assert report.is_proper
    assert not report.interval_ok
    assert "not an interval" in report.first_violation


def test_unused_color(p4):
    report = verify_interval(p4, make_coloring([1, 2, 1], t=3))
    assert report.is_proper
    assert not report.all_colors_used
    assert not report.interval_ok


def test_isolated_vertices_are_ignored():
    g = Graph(3, [(0, 1)])
    assert verify_interval(g, make_coloring([1])).interval_ok


def test_size_mismatch_raises(c4):
    with pytest.raises(ColoringError):
        verify_interval(c4, make_coloring([1, 2, 1]))


def test_colors_must_lie_in_range():
    with pytest.raises(ColoringError):
        make_coloring([1, 4], t=3)
    with pytest.raises(ValueError):
        EdgeColoring(t=0, colors=())


def test_unique_colors_and_lemma3(c4):
    c = make_coloring([1, 2, 3, 2])
    assert unique_color_edges(c4, c) == [(0, 1), (2, 3)]
    assert color_multiplicities(c) == {1: 1, 2: 2, 3: 1}
    assert lemma3_bound(4, 2) == Fraction(3)
    assert lemma3_bound(6, 1) == Fraction(7, 2)
    with pytest.raises(ColoringError):
        lemma3_bound(3, 4)
    with pytest.raises(ColoringError):
        unique_color_edges(c4, make_coloring([1, 1, 2, 2]))


def test_coloring_report(c4):
    report = coloring_report(c4, make_coloring([1, 2, 3, 2]))
    assert report["interval"] is True
    assert report["k"] == 2
    assert report["lemma3_bound"] == "3"
    bad = coloring_report(c4, make_coloring([1, 1, 2, 2]))
    assert bad["interval"] is False and bad["k"] is None


def test_parse_and_serialize_coloring():
    c = parse_coloring("3; 0:1 1:2 2:3 3:2")
    assert c.t == 3 and c.colors == (1, 2, 3, 2)
    assert serialize_coloring(c) == "3; 0:1 1:2 2:3 3:2"
    assert parse_coloring("2\n1:2\n0:1  # swapped order\n").colors == (1, 2)
    with pytest.raises(ColoringError):
        parse_coloring("3; 0:1 0:2")
    with pytest.raises(ColoringError):
        parse_coloring("3; 0:1 2:2")
    with pytest.raises(ColoringError):
        parse_coloring("3; 0=1")
    with pytest.raises(ColoringError):
        parse_coloring("")


def test_reverse_coloring_preserves_interval(c4):
    c = make_coloring([1, 2, 3, 2])
    assert reverse_coloring(c).colors == (3, 2, 1, 2)
    assert verify_interval(c4, reverse_coloring(c)).interval_ok


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=4), min_size=4, max_size=4))
def test_verifier_agrees_with_definition_on_c4(colors):
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    t = max(colors)
    assert verify_interval(g, make_coloring(colors, t)).interval_ok == is_interval_by_definition(g, colors, t)


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_verifier_agrees_with_definition_across_graphs(data):
    g = data.draw(simple_graphs(max_n=6, min_edges=1))
    t = data.draw(st.integers(min_value=1, max_value=g.m))
    colors = data.draw(st.lists(st.integers(min_value=1, max_value=t), min_size=g.m, max_size=g.m))
    report = verify_interval(g, make_coloring(colors, t))
    assert report.interval_ok == is_interval_by_definition(g, colors, t)
    if report.interval_ok:
        assert g.max_degree() <= t
        assert t <= lemma3_bound(g.m, len(unique_color_edges(g, make_coloring(colors, t))))
