"""
families.py

Named graph families with known interval-coloring answers, direct coloring
constructors for trees, caterpillars and K_4 chains, and a seeded random
planar generator for bound audits.

Canonical labelings:
    path(n)       vertices 0..n-1, edges i-(i+1)
    cycle(n)      path plus (n-1)-0
    star(n)       K_{1,n}: hub 0, leaves 1..n
    caterpillar   spine 0..s-1 (path), then the leaves of spine vertex 0, 1, ...
    fan(n)        hub 0 joined to the path 1..n-1
    complete_bipartite(a, b)  parts 0..a-1 and a..a+b-1
    hypercube(d)  vertex i is the bit string of i; i ~ j when they differ in one bit
    complete(n)   vertices 0..n-1
    k4_chain(b)   blocks on {2j, 2j+1, 2j+2, 2j+3}, consecutive blocks share edge {2j+2, 2j+3}
"""

import logging
import math
import random
from collections import deque
from itertools import combinations
from typing import Dict, List, Literal, Optional, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict, model_validator

from coloring import EdgeColoring, make_coloring
from graph_core import Graph

logger = logging.getLogger(__name__)

FAMILY_KINDS = ("path", "cycle", "star", "caterpillar", "fan", "complete_bipartite",
                "hypercube", "complete", "k4_chain")


class FamilyError(ValueError):
    """Raised on invalid family parameters or graphs outside a constructor's class."""


class GenerationError(ValueError):
    """Raised when random generation cannot reach the requested edge count."""

    def __init__(self, message: str, achieved: int):
        super().__init__(message)
        self.achieved = achieved


class FamilySpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["path", "cycle", "star", "caterpillar", "fan", "complete_bipartite",
                  "hypercube", "complete", "k4_chain"]
    parameters: Tuple[int, ...]

    @model_validator(mode="after")
    def _valid_parameters(self) -> "FamilySpec":
        p = self.parameters
        if self.kind == "complete_bipartite":
            if len(p) != 2 or min(p) < 1:
                raise ValueError("complete_bipartite takes two parameters m, n >= 1")
        elif self.kind == "caterpillar":
            # leaves per spine vertex
            if not p or min(p) < 0 or (len(p) == 1 and p[0] < 1):
                raise ValueError("caterpillar takes leaf counts per spine vertex (a lone spine vertex needs a leaf)")
        else:
            if len(p) != 1:
                raise ValueError(f"{self.kind} takes exactly one parameter")
            minimum = {"path": 2, "cycle": 3, "star": 1, "fan": 2, "hypercube": 1,
                       "complete": 2, "k4_chain": 1}[self.kind]
            if p[0] < minimum:
                raise ValueError(f"{self.kind} requires parameter >= {minimum}")
        return self

    @property
    def label(self) -> str:
        return f"{self.kind}({','.join(str(x) for x in self.parameters)})"


class ExpectedSpectrum(BaseModel):
    """Known answer: an interval [lo, hi] of feasible t, an exact W, not colorable, or unknown."""

    kind: Literal["interval", "exact_w", "not_colorable", "unknown"]
    lo: Optional[int] = None
    hi: Optional[int] = None
    W: Optional[int] = None
    source: str = ""


def family(kind: str, *parameters: int) -> FamilySpec:
    try:
        return FamilySpec(kind=kind, parameters=tuple(parameters))
    except ValueError as e:
        raise FamilyError(str(e)) from None


def _caterpillar_edges(leaves: Tuple[int, ...]) -> Tuple[int, List[Tuple[int, int]]]:
    spine = len(leaves)
    edges = [(i, i + 1) for i in range(spine - 1)]
    nxt = spine
    for i, count in enumerate(leaves):
        for _ in range(count):
            edges.append((i, nxt))
            nxt += 1
    return nxt, edges


def generate(spec: FamilySpec) -> Graph:
    kind, p = spec.kind, spec.parameters
    if kind == "path":
        G = nx.path_graph(p[0])
    elif kind == "cycle":
        G = nx.cycle_graph(p[0])
    elif kind == "star":
        G = nx.star_graph(p[0])
    elif kind == "complete":
        G = nx.complete_graph(p[0])
    elif kind == "complete_bipartite":
        G = nx.complete_bipartite_graph(p[0], p[1])
    elif kind == "hypercube":
        # vertex i is the bit string of i; flipping bit b gives its neighbor
        d = p[0]
        G = nx.empty_graph(2 ** d)
        G.add_edges_from((i, i ^ (1 << b)) for i in range(2 ** d) for b in range(d) if i < i ^ (1 << b))
    elif kind == "fan":
        G = nx.path_graph(range(1, p[0]))
        G.add_node(0)
        G.add_edges_from((0, v) for v in range(1, p[0]))
    elif kind == "caterpillar":
        n, edges = _caterpillar_edges(p)
        return Graph(n, edges)
    elif kind == "k4_chain":
        G = nx.Graph()
        for j in range(p[0]):
            G.add_edges_from(combinations(range(2 * j, 2 * j + 4), 2))
    else:
        raise FamilyError(f"unknown family {kind!r}")
    return Graph.from_networkx(G)


def expected_spectrum(spec: FamilySpec) -> ExpectedSpectrum:
    kind, p = spec.kind, spec.parameters
    if kind == "complete_bipartite" or kind == "star" or (kind == "cycle" and p[0] == 4):
        a, b = (p[0], p[1]) if kind == "complete_bipartite" else ((1, p[0]) if kind == "star" else (2, 2))
        return ExpectedSpectrum(kind="interval", lo=a + b - math.gcd(a, b), hi=a + b - 1,
                                source="K_{m,n}: m+n-gcd(m,n) <= t <= m+n-1")
    if kind == "hypercube":
        d = p[0]
        return ExpectedSpectrum(kind="interval", lo=d, hi=d * (d + 1) // 2,
                                source="Q_n: n <= t <= n(n+1)/2")
    if kind == "cycle":
        if p[0] % 2 == 1:
            return ExpectedSpectrum(kind="not_colorable", source="odd cycle: chi' = 3 > Delta = 2")
        return ExpectedSpectrum(kind="unknown")
    if kind in ("path", "caterpillar"):
        n = p[0] if kind == "path" else len(p) + sum(p)
        return ExpectedSpectrum(kind="exact_w", W=n - 1, source="caterpillar T_n: W(T_n) = n-1")
    if kind == "fan":
        n = p[0]
        if n == 3:
            return ExpectedSpectrum(kind="not_colorable", source="F_3 is the triangle")
        return ExpectedSpectrum(kind="exact_w", W=n - 1, source="fan F_n: W(F_n) = n-1")
    if kind == "k4_chain":
        n = 2 * p[0] + 2
        return ExpectedSpectrum(kind="exact_w", W=(3 * n - 4) // 2,
                                source="planar sharpness: W = (3n-4)/2 attained by the K_4 chain")
    return ExpectedSpectrum(kind="unknown")


def _bfs_tree_order(g: Graph, root: int) -> List[Tuple[int, int, int]]:
    """(parent, child, edge) in BFS order; FamilyError if g is not a tree."""
    if g.m != g.n - 1:
        raise FamilyError(f"not a tree: {g.n} vertices but {g.m} edges")
    seen = [False] * g.n
    seen[root] = True
    queue = deque([root])
    order = []
    while queue:
        x = queue.popleft()
        for y, e in sorted(g.adjacency[x]):
            if not seen[y]:
                seen[y] = True
                order.append((x, y, e))
                queue.append(y)
    if not all(seen):
        raise FamilyError("not a tree: graph is disconnected")
    return order


def tree_interval_coloring(g: Graph) -> EdgeColoring:
    """Root the tree; child edges continue consecutively from the parent-edge color."""
    if g.m == 0:
        raise FamilyError("tree must have at least one edge")
    order = _bfs_tree_order(g, 0)
    colors = [0] * g.m
    parent_color: Dict[int, int] = {0: 0}
    next_color: Dict[int, int] = {}
    for parent, child, e in order:
        c = next_color.get(parent, parent_color[parent] + 1)
        colors[e] = c
        next_color[parent] = c + 1
        parent_color[child] = c
    low = min(colors)
    return make_coloring([c - low + 1 for c in colors])


def _spine(g: Graph) -> Optional[List[int]]:
    degrees = g.degrees()
    inner = [v for v in range(g.n) if degrees[v] > 1]
    if not inner:
        return [0] if g.n == 2 else None
    inner_set = set(inner)
    ends = [v for v in inner if sum(1 for y, _ in g.adjacency[v] if y in inner_set) <= 1]
    if len(inner) == 1:
        return inner
    if len(ends) != 2:
        return None
    path = [min(ends)]
    previous = -1
    while True:
        step = [y for y, _ in g.adjacency[path[-1]] if y in inner_set and y != previous]
        if not step:
            break
        if len(step) > 1:
            return None
        previous = path[-1]
        path.append(step[0])
    return path if len(path) == len(inner) else None


def caterpillar_interval_coloring(g: Graph) -> EdgeColoring:
    """Colors 1..n-1 each used once: leaves of each spine vertex, then the next spine edge."""
    _bfs_tree_order(g, 0)
    spine = _spine(g)
    if spine is None:
        raise FamilyError("not a caterpillar: non-leaf vertices do not form a path")
    colors = [0] * g.m
    on_spine = set(spine)
    c = 1
    for i, s in enumerate(spine):
        for y, e in sorted(g.adjacency[s]):
            if y not in on_spine:
                colors[e] = c
                c += 1
        if i + 1 < len(spine):
            colors[g.edge_id(s, spine[i + 1])] = c
            c += 1
    return make_coloring(colors, g.m)


def k4_chain_coloring(g: Graph, blocks: int) -> EdgeColoring:
    """
    Interval (3b+1)-coloring of k4_chain(b).

    Block j shares edge {2j, 2j+1} with its predecessor, colored 3j+1; the
    opposite edge {2j+2, 2j+3} gets 3j+4 and the two remaining perfect
    matchings get 3j+2 and 3j+3, so every color except the shared ones is used
    twice.
    """
    if g != generate(family("k4_chain", blocks)):
        raise FamilyError(f"graph is not k4_chain({blocks}) in canonical labeling")
    colors = [0] * g.m
    for j in range(blocks):
        a, b, x, y = 2 * j, 2 * j + 1, 2 * j + 2, 2 * j + 3
        base = 3 * j
        colors[g.edge_id(a, b)] = base + 1
        colors[g.edge_id(a, x)] = base + 2
        colors[g.edge_id(b, y)] = base + 2
        colors[g.edge_id(a, y)] = base + 3
        colors[g.edge_id(b, x)] = base + 3
        colors[g.edge_id(x, y)] = base + 4
    return make_coloring(colors, 3 * blocks + 1)


def random_planar(n: int, m: int, seed: int) -> Graph:
    """Insert shuffled candidate edges, keeping each only if the graph stays planar."""
    if n < 2:
        raise FamilyError("random_planar needs n >= 2")
    cap = 1 if n == 2 else 3 * n - 6
    if not 0 <= m <= cap:
        raise FamilyError(f"m={m} outside 0..{cap} for planar graphs on {n} vertices")
    rng = random.Random(seed)
    candidates = list(combinations(range(n), 2))
    rng.shuffle(candidates)
    G = nx.Graph()
    G.add_nodes_from(range(n))
    for u, v in candidates:
        if G.number_of_edges() == m:
            break
        G.add_edge(u, v)
        planar, _ = nx.check_planarity(G)
        if not planar:
            G.remove_edge(u, v)
    achieved = G.number_of_edges()
    if achieved < m:
        raise GenerationError(f"reached only {achieved} of {m} edges", achieved)
    logger.debug("🎲 random_planar(n=%d, m=%d, seed=%d) done", n, m, seed)
    return Graph.from_networkx(G)


def sharpness_candidates(n: int, seed: int, count: int = 4) -> List[Tuple[str, Graph]]:
    """Dense planar graphs on n vertices to search at t = floor((3n-4)/2): the K_4 chain, then triangulations."""
    if n < 3:
        raise FamilyError("sharpness candidates need n >= 3")
    candidates: List[Tuple[str, Graph]] = []
    if n % 2 == 0:
        spec = family("k4_chain", (n - 2) // 2)
        candidates.append((spec.label, generate(spec)))
    rng = random.Random(seed)
    for _ in range(count):
        graph_seed = rng.randrange(2 ** 31)
        candidates.append((f"triangulation(n={n},seed={graph_seed})", random_planar(n, 3 * n - 6, graph_seed)))
    return candidates
