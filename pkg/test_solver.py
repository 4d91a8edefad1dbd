import pytest
from hypothesis import given, settings, strategies as st

from agents.solver import PRUNE_RULES, SearchConfig, SolverAgent, Status, edge_order
from coloring import lemma3_bound, unique_color_edges, verify_interval
from conftest import brute_force_feasible, is_interval_by_definition
from families import family, generate
from graph_core import Graph


@pytest.fixture
def solver():
    return SolverAgent(SearchConfig(node_limit=2_000_000, time_limit=60.0))


def test_c4_spectrum(solver, c4):
    result = solver.spectrum(c4)
    assert result.feasible_t == [2, 3]
    assert (result.w, result.W) == (2, 3)
    assert result.unknowns == []
    for t, witness in result.witnesses.items():
        assert witness.t == t
        assert verify_interval(c4, witness).interval_ok


def test_k23_spectrum(solver):
    assert solver.spectrum(generate(family("complete_bipartite", 2, 3))).feasible_t == [4]


def test_star_spectrum(solver):
    assert solver.spectrum(generate(family("star", 3))).feasible_t == [3]


def test_odd_cycle_is_not_colorable(solver):
    result = solver.spectrum(generate(family("cycle", 5)))
    assert result.feasible_t == []
    assert result.w is None and result.W is None
    assert all(s is Status.INFEASIBLE for s in result.status.values())


def test_feasible_t_above_edge_count_is_infeasible(solver, p4):
    result = solver.feasible(p4, 4)
    assert result.status is Status.INFEASIBLE
    assert result.nodes == 0


def test_feasible_rejects_bad_input(solver):
    with pytest.raises(ValueError):
        solver.feasible(Graph(2, []), 1)
    with pytest.raises(ValueError):
        solver.feasible(Graph(2, [(0, 1)]), 0)


def test_node_limit_gives_unknown(p4):
    result = SolverAgent(SearchConfig(node_limit=1)).feasible(p4, 3)
    assert result.status is Status.UNKNOWN
    assert result.reason == "node limit"
    assert result.witness is None


def test_max_coloring(solver):
    fan5 = generate(family("fan", 5))
    best = solver.max_coloring(fan5)
    assert best.W == 4 and best.exact
    assert verify_interval(fan5, best.witness).interval_ok
    assert solver.max_coloring(Graph(2, [(0, 1)])).W == 1
    assert solver.max_coloring(generate(family("cycle", 3))) is None


def test_max_coloring_on_caterpillar(solver):
    caterpillar = generate(family("caterpillar", 1, 1, 2))
    assert caterpillar.n == 7
    assert solver.max_coloring(caterpillar).W == 6


def test_search_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(node_limit=0)
    with pytest.raises(ValueError):
        SearchConfig(time_limit=-1)
    with pytest.raises(ValueError):
        SearchConfig(edge_order="random")
    with pytest.raises(ValueError):
        SearchConfig(disabled_prunes=frozenset({"magic"}))


def test_edge_orders_are_permutations(q3):
    for kind in ("bfs", "degree_desc", "input"):
        assert sorted(edge_order(q3, kind)) == list(range(q3.m))
    with pytest.raises(ValueError):
        edge_order(q3, "random")


def test_bfs_order_keeps_edges_connected(q3):
    order = edge_order(q3, "bfs")
    touched = set(q3.edges[order[0]])
    for e in order[1:]:
        u, v = q3.edges[e]
        assert u in touched or v in touched
        touched.update((u, v))


def test_search_is_deterministic(solver, q3):
    first = solver.feasible(q3, 5)
    second = solver.feasible(q3, 5)
    assert first.witness == second.witness
    assert first.nodes == second.nodes


@pytest.mark.parametrize("rule", PRUNE_RULES)
def test_disabling_a_prune_keeps_answers(rule):
    graphs = [generate(family("cycle", 4)), generate(family("cycle", 5)), generate(family("star", 3)),
              generate(family("complete_bipartite", 2, 3)), generate(family("fan", 4))]
    full = SolverAgent(SearchConfig())
    reduced = SolverAgent(SearchConfig(disabled_prunes=frozenset({rule})))
    for g in graphs:
        for t in range(1, g.m + 1):
            expected = full.feasible(g, t)
            got = reduced.feasible(g, t)
            assert got.status == expected.status, (g, t, rule)
            if got.witness is not None:
                assert verify_interval(g, got.witness).interval_ok


def test_run_sets_spectrum_in_state(c4):
    with pytest.raises(ValueError):
        SolverAgent().run({})
    state = SolverAgent().run({"graph": c4})
    assert state["spectrum"].feasible_t == [2, 3]
    assert state["agent_outputs"]["solver"]["feasible_t"] == [2, 3]


def test_spectrum_json_is_sorted_and_timing_optional(solver, c4):
    payload = solver.spectrum(c4).to_json(timing=False)
    assert payload["feasible_t"] == [2, 3]
    assert [r["t"] for r in payload["runs"]] == [2, 3]
    assert all("millis" not in r for r in payload["runs"])
    assert set(payload["witnesses"]) == {"2", "3"}


@st.composite
def small_graphs(draw):
    n = draw(st.integers(min_value=2, max_value=5))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=1, max_size=6, unique=True))
    return Graph(n, chosen)


@settings(max_examples=40, deadline=None)
@given(small_graphs())
def test_search_agrees_with_brute_force(g):
    solver = SolverAgent(SearchConfig())
    for t in range(1, g.m + 1):
        expected = brute_force_feasible(g, t)
        if expected is None:
            continue
        assert (solver.feasible(g, t).status is Status.FEASIBLE) == expected, (g.edges, t)


def test_parallel_spectrum_matches_sequential(monkeypatch, c4):
    monkeypatch.setattr("agents.solver.Config.THREADS", 2)
    parallel = SolverAgent(SearchConfig(parallel_over_t=True)).spectrum(c4)
    assert parallel.feasible_t == [2, 3]


@pytest.mark.parametrize("kind,params", [
    ("cycle", (4,)), ("fan", (5,)), ("complete_bipartite", (2, 3)), ("hypercube", (2,)),
    ("k4_chain", (2,)), ("caterpillar", (2, 1)), ("star", (3,)),
])
def test_witnesses_respect_degree_and_counting_bounds(solver, kind, params):
    g = generate(family(kind, *params))
    result = solver.spectrum(g)
    assert result.witnesses
    for t, witness in result.witnesses.items():
        assert is_interval_by_definition(g, witness.colors, t)
        assert g.max_degree() <= t
        assert t <= lemma3_bound(g.m, len(unique_color_edges(g, witness)))
