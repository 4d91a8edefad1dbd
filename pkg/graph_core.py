"""
graph_core.py

Immutable simple graphs, the invariants the bounds need (degree, Δ, diameter,
planarity, outerplanarity, bipartiteness, triangle-freeness) and graph I/O in
edge-list and graph6 formats.
"""

import hashlib
import re
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict, model_validator

GRAPH_FORMATS = ("edge_list", "graph6")

_PAIR = re.compile(r"^(-?\d+)-(-?\d+)$")


class GraphFormatError(ValueError):
    """Raised when graph text cannot be parsed."""


class NonSimpleGraphError(GraphFormatError):
    """Raised on loops or repeated edges."""


class Graph:
    """Simple undirected graph on vertices 0..n-1 with indexed edges."""

    __slots__ = ("n", "edges", "adjacency", "labels", "_edge_index")

    def __init__(self, n: int, edges: Iterable[Tuple[int, int]], labels: Optional[Sequence[str]] = None):
        if n < 1:
            raise GraphFormatError(f"vertex count must be at least 1, got {n}")
        normalized: List[Tuple[int, int]] = []
        seen: Dict[Tuple[int, int], int] = {}
        for index, (u, v) in enumerate(edges):
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge {index} ({u}-{v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise NonSimpleGraphError(f"loop at vertex {u} (edge {index})")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise NonSimpleGraphError(f"multi-edge {key[0]}-{key[1]} (edges {seen[key]} and {index})")
            seen[key] = index
            normalized.append((u, v))

        adjacency: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
        for index, (u, v) in enumerate(normalized):
            adjacency[u].append((v, index))
            adjacency[v].append((u, index))

        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(normalized))
        object.__setattr__(self, "adjacency", tuple(tuple(a) for a in adjacency))
        object.__setattr__(self, "labels", tuple(labels) if labels is not None else tuple(str(i) for i in range(n)))
        object.__setattr__(self, "_edge_index", seen)
        if len(self.labels) != n:
            raise GraphFormatError(f"expected {n} labels, got {len(self.labels)}")

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __getstate__(self):
        return {"n": self.n, "edges": self.edges, "labels": self.labels}

    def __setstate__(self, state):
        Graph.__init__(self, state["n"], state["edges"], state["labels"])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> List[int]:
        return [len(a) for a in self.adjacency]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def edge_id(self, u: int, v: int) -> int:
        """Index of edge uv; KeyError when absent."""
        return self._edge_index[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._edge_index

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(range(self.n))
        G.add_edges_from(self.edges)
        return G

    @classmethod
    def from_networkx(cls, G: nx.Graph) -> "Graph":
        """Relabel to 0..n-1 following the sorted node order and keep the old labels."""
        if G.is_directed() or G.is_multigraph():
            raise NonSimpleGraphError("only simple undirected graphs are supported")
        nodes = sorted(G.nodes())
        position = {node: i for i, node in enumerate(nodes)}
        pairs = sorted(tuple(sorted((position[u], position[v]))) for u, v in G.edges())
        return cls(len(nodes), pairs, [str(node) for node in nodes])


class GraphClassProfile(BaseModel):
    """Class predicates and the Δ / diameter values the bounds depend on."""

    model_config = ConfigDict(frozen=True)

    is_planar: bool
    is_outerplanar: bool
    is_bipartite: bool
    is_triangle_free: bool
    max_degree: int
    diameter: Optional[int]  # None means infinite (disconnected)
    is_connected: bool

    @model_validator(mode="after")
    def _consistent(self) -> "GraphClassProfile":
        if self.is_outerplanar and not self.is_planar:
            raise ValueError("outerplanar graphs are planar")
        if self.is_bipartite and not self.is_triangle_free:
            raise ValueError("bipartite graphs are triangle-free")
        if (self.diameter is not None) != self.is_connected:
            raise ValueError("diameter is finite exactly when the graph is connected")
        return self


def degree(g: Graph, v: int) -> int:
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range 0..{g.n - 1}")
    return len(g.adjacency[v])


def is_planar(g: Graph) -> bool:
    # networkx runs the left-right planarity test
    planar, _ = nx.check_planarity(g.to_networkx())
    return planar


def is_outerplanar(g: Graph) -> bool:
    """Outerplanar iff adding one apex adjacent to every vertex keeps it planar."""
    G = g.to_networkx()
    apex = g.n
    G.add_edges_from((apex, v) for v in range(g.n))
    planar, _ = nx.check_planarity(G)
    return planar


def components(g: Graph) -> List[List[int]]:
    return [sorted(c) for c in sorted(nx.connected_components(g.to_networkx()), key=min)]


def diameter(g: Graph) -> Optional[int]:
    """All-pairs BFS eccentricity maximum; None when disconnected."""
    G = g.to_networkx()
    if not nx.is_connected(G):
        return None
    return max(max(lengths.values()) for _, lengths in nx.all_pairs_shortest_path_length(G))


def profile(g: Graph) -> GraphClassProfile:
    G = g.to_networkx()
    connected = nx.is_connected(G)
    return GraphClassProfile(
        is_planar=is_planar(g),
        is_outerplanar=is_outerplanar(g),
        is_bipartite=nx.is_bipartite(G),
        is_triangle_free=sum(nx.triangles(G).values()) == 0,
        max_degree=g.max_degree(),
        diameter=diameter(g) if connected else None,
        is_connected=connected,
    )


def subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    """Induced subgraph on `vertices`, relabeled in the given order."""
    position = {v: i for i, v in enumerate(vertices)}
    pairs = [(position[u], position[v]) for u, v in g.edges if u in position and v in position]
    return Graph(len(vertices), pairs, [g.labels[v] for v in vertices])


def _parse_edge_list(text: str) -> Graph:
    lines = [line.split("#", 1)[0] for line in text.splitlines()]
    body = " ".join(lines).replace(";", " ").split()
    if not body:
        raise GraphFormatError("empty edge list")
    try:
        n = int(body[0])
    except ValueError:
        raise GraphFormatError(f"expected vertex count, got {body[0]!r}") from None
    pairs = []
    for token in body[1:]:
        match = _PAIR.match(token)
        if not match:
            raise GraphFormatError(f"malformed edge token {token!r}; expected u-v")
        pairs.append((int(match.group(1)), int(match.group(2))))
    return Graph(n, pairs)


def _parse_graph6(text: str) -> Graph:
    line = text.strip().splitlines()[0].strip() if text.strip() else ""
    if not line:
        raise GraphFormatError("empty graph6 input")
    try:
        G = nx.from_graph6_bytes(line.encode("ascii"))
    except (ValueError, UnicodeEncodeError, nx.NetworkXError) as e:
        raise GraphFormatError(f"malformed graph6 line {line!r}: {e}") from None
    return Graph.from_networkx(G)


def parse_graph(text: str, format: str = "edge_list") -> Graph:
    if format == "edge_list":
        return _parse_edge_list(text)
    if format == "graph6":
        return _parse_graph6(text)
    raise GraphFormatError(f"unknown graph format {format!r}; expected one of {GRAPH_FORMATS}")


def parse_graph6_lines(text: str) -> List[Graph]:
    return [_parse_graph6(line) for line in text.splitlines() if line.strip()]


def detect_format(text: str) -> str:
    """Edge lists always carry '-' or ';' (or are a bare vertex count); graph6 never does."""
    stripped = text.strip()
    if stripped.startswith(">>graph6<<"):
        return "graph6"
    if "-" in stripped or ";" in stripped or stripped.split("#", 1)[0].strip().isdigit():
        return "edge_list"
    return "graph6"


def serialize_graph(g: Graph, format: str = "edge_list") -> str:
    if format == "edge_list":
        pairs = " ".join(f"{u}-{v}" for u, v in g.edges)
        return f"{g.n}; {pairs}".rstrip()
    if format == "graph6":
        return nx.to_graph6_bytes(g.to_networkx(), header=False).decode("ascii").strip()
    raise GraphFormatError(f"unknown graph format {format!r}; expected one of {GRAPH_FORMATS}")


def digest(g: Graph) -> str:
    return hashlib.sha256(serialize_graph(g).encode()).hexdigest()
