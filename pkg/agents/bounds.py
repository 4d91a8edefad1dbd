"""
Bounds Agent

This agent evaluates every known upper bound on the number of colors in an
interval coloring, decides which ones apply to the given graph, and produces
the search window [lower, ceiling] the solver explores.

Input: graph (Graph), profile (GraphClassProfile)
Output: bound_report (BoundReport)
"""

import logging
import math
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict, field_serializer

from graph_core import Graph, GraphClassProfile, components, profile as compute_profile, subgraph

logger = logging.getLogger(__name__)


class BoundsError(ValueError):
    """Raised when no interval coloring is definable (edgeless graph)."""


class BoundEntry(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    kind: str  # "upper" or "lower"
    applicable: bool
    value: Optional[Fraction]
    anchor: str

    @field_serializer("value")
    def _rational(self, value: Optional[Fraction]) -> Optional[str]:
        return None if value is None else str(value)


class BoundReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    entries: List[BoundEntry]
    ceiling: int
    ceiling_source: str
    floor_lb: int
    not_colorable_reason: Optional[str] = None

    def entry(self, name: str) -> BoundEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def to_json(self) -> Dict[str, Any]:
        return {
            "bounds": [e.model_dump(mode="json", exclude={"kind"}) for e in self.entries if e.kind == "upper"],
            "ceiling": self.ceiling,
            "ceiling_source": self.ceiling_source,
            "lower": self.floor_lb,
            "not_colorable_reason": self.not_colorable_reason,
        }


def _diameter_bound(diam: int, delta: int, bipartite: bool) -> int:
    if bipartite:
        return diam * (delta - 1) + 1
    return (diam + 1) * (delta - 1) + 1


def odd_regular_component(g: Graph) -> Optional[List[int]]:
    """A component with an edge that is regular of odd order; such a component is class 2."""
    degrees = g.degrees()
    for comp in components(g):
        if len(comp) < 2 or len(comp) % 2 == 0:
            continue
        if len({degrees[v] for v in comp}) == 1:
            return comp
    return None


class BoundsAgent:
    """Agent responsible for the catalog of interval color-count bounds."""

    def __init__(self, componentwise_diameter: bool = False):
        self.name = "bounds"
        self.description = "Evaluates upper and lower bounds on interval color counts"
        self.componentwise_diameter = componentwise_diameter

        # name -> (anchor, applicability, value)
        self.catalog: Dict[str, Tuple[str, Callable[[Graph, GraphClassProfile], bool],
                                      Callable[[Graph, GraphClassProfile], Fraction]]] = {
            "kamalian_general": (
                "Kamalian: W(G) <= 2|V(G)|-3 for graphs with at least one edge",
                lambda g, p: True,
                lambda g, p: Fraction(2 * g.n - 3),
            ),
            "gkm_general": (
                "Giaro-Kubale-Malafiejski: W(G) <= 2|V(G)|-4 for |V(G)| >= 3",
                lambda g, p: g.n >= 3,
                lambda g, p: Fraction(2 * g.n - 4),
            ),
            "axenovich_planar": (
                "Axenovich: W(G) <= 11|V(G)|/6 for planar G",
                lambda g, p: p.is_planar,
                lambda g, p: Fraction(11 * g.n, 6),
            ),
            "planar": (
                "planar theorem: W(G) <= (3|V(G)|-4)/2 for planar G with |V(G)| >= 2",
                lambda g, p: p.is_planar and g.n >= 2,
                lambda g, p: Fraction(3 * g.n - 4, 2),
            ),
            "outerplanar": (
                "outerplanar theorem: W(G) <= |V(G)|-1 for outerplanar G with |V(G)| >= 2",
                lambda g, p: p.is_outerplanar and g.n >= 2,
                lambda g, p: Fraction(g.n - 1),
            ),
            "triangle_free": (
                "Asratian-Kamalian: t <= |V(G)|-1 for triangle-free G",
                lambda g, p: p.is_triangle_free,
                lambda g, p: Fraction(g.n - 1),
            ),
            "diameter": (
                "Asratian-Kamalian: W(G) <= (diam(G)+1)(Delta(G)-1)+1 for connected G",
                lambda g, p: p.is_connected,
                lambda g, p: Fraction(_diameter_bound(p.diameter, p.max_degree, False)),
            ),
            "bipartite_diameter": (
                "Asratian-Kamalian: W(G) <= diam(G)(Delta(G)-1)+1 for connected bipartite G",
                lambda g, p: p.is_connected and p.is_bipartite,
                lambda g, p: Fraction(_diameter_bound(p.diameter, p.max_degree, True)),
            ),
            "edge_count": (
                "every color is used: t <= |E(G)|",
                lambda g, p: True,
                lambda g, p: Fraction(g.m),
            ),
            "componentwise_diameter": (
                "extension: each component's colors form an interval, so t <= sum of component diameter bounds",
                lambda g, p: self.componentwise_diameter and not p.is_connected,
                lambda g, p: Fraction(self._componentwise_value(g)),
            ),
        }

    def _componentwise_value(self, g: Graph) -> int:
        total = 0
        for comp in components(g):
            if len(comp) < 2:
                continue
            h = subgraph(g, comp)
            G = h.to_networkx()
            total += _diameter_bound(nx.diameter(G), h.max_degree(), nx.is_bipartite(G))
        return total

    def upper_bounds(self, g: Graph, p: Optional[GraphClassProfile] = None) -> BoundReport:
        """
        Evaluate every catalog bound for g.

        Args:
            g (Graph): graph with at least one edge
            p (GraphClassProfile): profile(g); computed when omitted

        Returns:
            BoundReport: entries, ceiling (floored minimum over applicable
            upper bounds) and the Δ lower bound
        """
        if g.m == 0:
            raise BoundsError("interval colorings are defined for graphs with at least one edge")
        p = p or compute_profile(g)

        entries: List[BoundEntry] = []
        for name, (anchor, applies, value) in self.catalog.items():
            applicable = bool(applies(g, p))
            entries.append(BoundEntry(
                name=name,
                kind="upper",
                applicable=applicable,
                value=value(g, p) if applicable else None,
                anchor=anchor,
            ))
        entries.append(BoundEntry(
            name="max_degree",
            kind="lower",
            applicable=True,
            value=Fraction(self.lower_bounds(g, p)),
            anchor="interval colorable graphs satisfy chi'(G) = Delta(G), so t >= Delta(G)",
        ))

        best = min((e for e in entries if e.kind == "upper" and e.applicable), key=lambda e: e.value)
        reason = None
        comp = odd_regular_component(g)
        if comp is not None:
            reason = f"component {comp} is regular of odd order, hence class 2 and not interval colorable"
            logger.info("🚫 %s", reason)

        return BoundReport(
            entries=entries,
            ceiling=math.floor(best.value),
            ceiling_source=best.name,
            floor_lb=self.lower_bounds(g, p),
            not_colorable_reason=reason,
        )

    def lower_bounds(self, g: Graph, p: Optional[GraphClassProfile] = None) -> int:
        if g.m == 0:
            raise BoundsError("interval colorings are defined for graphs with at least one edge")
        return p.max_degree if p is not None else g.max_degree()

    def explain(self, report: BoundReport) -> str:
        """Human-readable listing of each bound with its anchor."""
        lines = []
        for e in report.entries:
            mark = "✅" if e.applicable else "➖"
            value = str(e.value) if e.value is not None else "n/a"
            lines.append(f"{mark} {e.kind:5} {e.name:24} {value:>8}  {e.anchor}")
        lines.append(f"ceiling {report.ceiling} (from {report.ceiling_source}), lower {report.floor_lb}")
        if report.not_colorable_reason:
            lines.append(f"not interval colorable: {report.not_colorable_reason}")
        return "\n".join(lines)

    def run(self, state: Dict[str, Any]) -> Dict[str, Any]:
        """
        Main execution method for the agent.

        Args:
            state (Dict[str, Any]): Current state containing graph and, optionally, profile

        Returns:
            Dict[str, Any]: Updated state with the bound report
        """
        g = state.get("graph")
        if g is None:
            raise ValueError("graph is required in state")
        p = state.get("profile") or compute_profile(g)
        report = self.upper_bounds(g, p)
        return {
            **state,
            "profile": p,
            "bound_report": report,
            "agent_outputs": {
                **state.get("agent_outputs", {}),
                "bounds": {
                    "ceiling": report.ceiling,
                    "ceiling_source": report.ceiling_source,
                    "lower": report.floor_lb,
                    "status": "completed",
                },
            },
        }
