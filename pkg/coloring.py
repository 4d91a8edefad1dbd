"""
coloring.py

Edge-colorings with a declared color count t, the interval verifier, and the
counting quantities behind the unique-color bound W(G) <= (|E| + k) / 2.
"""

import re
from collections import Counter
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from graph_core import Graph

_ASSIGNMENT = re.compile(r"^(\d+):(-?\d+)$")


class ColoringError(ValueError):
    """Raised on malformed colorings or colorings that do not fit their graph."""


class EdgeColoring(BaseModel):
    """Colors per edge index, each in 1..t."""

    model_config = ConfigDict(frozen=True)

    t: int
    colors: Tuple[int, ...]

    @field_validator("t")
    @classmethod
    def _t_positive(cls, t: int) -> int:
        if t < 1:
            raise ValueError(f"declared color count must be at least 1, got {t}")
        return t

    @model_validator(mode="after")
    def _colors_in_range(self) -> "EdgeColoring":
        for index, color in enumerate(self.colors):
            if not 1 <= color <= self.t:
                raise ValueError(f"edge {index} has color {color} outside 1..{self.t}")
        return self


class PaletteSummary(BaseModel):
    vertex: int
    min: Optional[int]
    max: Optional[int]
    size: int


class VerificationReport(BaseModel):
    is_proper: bool
    all_colors_used: bool
    palettes: List[PaletteSummary]
    interval_ok: bool
    first_violation: Optional[str]
    violations: List[str]


def make_coloring(colors, t: Optional[int] = None) -> EdgeColoring:
    """Build a coloring; t defaults to the largest color."""
    colors = tuple(int(c) for c in colors)
    try:
        return EdgeColoring(t=t if t is not None else max(colors, default=1), colors=colors)
    except ValueError as e:
        raise ColoringError(str(e)) from None


def _check_size(g: Graph, c: EdgeColoring) -> None:
    if len(c.colors) != g.m:
        raise ColoringError(f"coloring has {len(c.colors)} colors but the graph has {g.m} edges")


def verify_interval(g: Graph, c: EdgeColoring) -> VerificationReport:
    _check_size(g, c)
    violations: List[str] = []
    palettes: List[PaletteSummary] = []
    proper = True
    palettes_ok = True

    for v in range(g.n):
        incident = [c.colors[e] for _, e in g.adjacency[v]]
        if not incident:
            palettes.append(PaletteSummary(vertex=v, min=None, max=None, size=0))
            continue
        distinct = set(incident)
        low, high = min(incident), max(incident)
        palettes.append(PaletteSummary(vertex=v, min=low, max=high, size=len(distinct)))
        if len(distinct) != len(incident):
            proper = False
            repeated = sorted(color for color, count in Counter(incident).items() if count > 1)
            violations.append(f"vertex {v}: color {repeated[0]} appears on more than one incident edge")
        elif high - low != len(incident) - 1:
            palettes_ok = False
            violations.append(f"vertex {v}: palette {sorted(distinct)} is not an interval")

    used = set(c.colors)
    missing = [color for color in range(1, c.t + 1) if color not in used]
    if missing:
        violations.append(f"color {missing[0]} of 1..{c.t} is unused")

    return VerificationReport(
        is_proper=proper,
        all_colors_used=not missing,
        palettes=palettes,
        interval_ok=proper and palettes_ok and not missing,
        first_violation=violations[0] if violations else None,
        violations=violations,
    )


def color_multiplicities(c: EdgeColoring) -> Dict[int, int]:
    return dict(Counter(c.colors))


def unique_color_edges(g: Graph, c: EdgeColoring) -> List[Tuple[int, int]]:
    """(edge index, color) for colors used exactly once, by ascending color."""
    report = verify_interval(g, c)
    if not report.interval_ok:
        raise ColoringError(f"not an interval coloring: {report.first_violation}")
    counts = color_multiplicities(c)
    return sorted(((e, color) for e, color in enumerate(c.colors) if counts[color] == 1), key=lambda p: p[1])


def lemma3_bound(m: int, k: int) -> Fraction:
    """(m + k) / 2: k colors used once and t - k used at least twice give m >= 2t - k."""
    if not 0 <= k <= m:
        raise ColoringError(f"unique-color count k={k} must lie in 0..{m}")
    return Fraction(m + k, 2)


def reverse_coloring(c: EdgeColoring) -> EdgeColoring:
    return EdgeColoring(t=c.t, colors=tuple(c.t + 1 - color for color in c.colors))


def parse_coloring(text: str) -> EdgeColoring:
    """Parse "t; e0:c0 e1:c1 ..."; every edge index 0..m-1 must occur once."""
    body = " ".join(line.split("#", 1)[0] for line in text.splitlines()).replace(";", " ").split()
    if not body:
        raise ColoringError("empty coloring")
    try:
        t = int(body[0])
    except ValueError:
        raise ColoringError(f"expected color count, got {body[0]!r}") from None
    assigned: Dict[int, int] = {}
    for token in body[1:]:
        match = _ASSIGNMENT.match(token)
        if not match:
            raise ColoringError(f"malformed assignment {token!r}; expected edge:color")
        edge, color = int(match.group(1)), int(match.group(2))
        if edge in assigned:
            raise ColoringError(f"edge {edge} is colored twice")
        assigned[edge] = color
    if sorted(assigned) != list(range(len(assigned))):
        raise ColoringError("edge indices must be exactly 0..m-1")
    return make_coloring([assigned[e] for e in range(len(assigned))], t)


def serialize_coloring(c: EdgeColoring) -> str:
    pairs = " ".join(f"{e}:{color}" for e, color in enumerate(c.colors))
    return f"{c.t}; {pairs}".rstrip()


def coloring_report(g: Graph, c: EdgeColoring) -> Dict[str, Any]:
    report = verify_interval(g, c)
    k: Optional[int] = None
    bound: Optional[str] = None
    if report.interval_ok:
        k = len(unique_color_edges(g, c))
        bound = str(lemma3_bound(g.m, k))
    return {
        "proper": report.is_proper,
        "all_used": report.all_colors_used,
        "interval": report.interval_ok,
        "violations": report.violations,
        "k": k,
        "lemma3_bound": bound,
    }
