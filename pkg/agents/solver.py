"""
Solver Agent

This agent decides whether a graph admits an interval t-coloring by exhaustive
backtracking and sweeps t over the bounds window to compute the full spectrum.

Input: graph (Graph), optionally profile and bound_report
Output: spectrum (SpectrumResult)
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from enum import Enum
from typing import Any, Dict, FrozenSet, List, Literal, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt, field_validator

from agents.bounds import BoundReport, BoundsAgent
from coloring import EdgeColoring, verify_interval
from config import Config
from graph_core import Graph, profile as compute_profile

logger = logging.getLogger(__name__)

PRUNE_RULES = ("duplicate", "window", "completion", "lookahead", "symmetry")


class SearchConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    node_limit: PositiveInt = Field(default_factory=lambda: Config.NODE_LIMIT)
    time_limit: PositiveFloat = Field(default_factory=lambda: Config.TIME_LIMIT)
    edge_order: Literal["bfs", "degree_desc", "input"] = Field(default_factory=lambda: Config.EDGE_ORDER)
    parallel_over_t: bool = False
    disabled_prunes: FrozenSet[str] = frozenset()

    @field_validator("disabled_prunes")
    @classmethod
    def _known_rules(cls, rules: FrozenSet[str]) -> FrozenSet[str]:
        unknown = set(rules) - set(PRUNE_RULES)
        if unknown:
            raise ValueError(f"unknown prune rules {sorted(unknown)}; expected a subset of {PRUNE_RULES}")
        return rules


class Status(str, Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    UNKNOWN = "unknown"


class FeasibilityResult(BaseModel):
    t: int
    status: Status
    witness: Optional[EdgeColoring] = None
    nodes: int = 0
    millis: int = 0
    reason: Optional[str] = None

    def to_json(self, timing: bool = True) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "t": self.t,
            "status": self.status.value,
            "nodes": self.nodes,
            "reason": self.reason,
        }
        if self.witness is not None:
            payload["witness"] = list(self.witness.colors)
        if timing:
            payload["millis"] = self.millis
        return payload


class SpectrumResult(BaseModel):
    lower: int
    ceiling: int
    runs: Dict[int, FeasibilityResult]

    @property
    def feasible_t(self) -> List[int]:
        return sorted(t for t, r in self.runs.items() if r.status is Status.FEASIBLE)

    @property
    def unknowns(self) -> List[int]:
        return sorted(t for t, r in self.runs.items() if r.status is Status.UNKNOWN)

    @property
    def witnesses(self) -> Dict[int, EdgeColoring]:
        return {t: r.witness for t, r in sorted(self.runs.items()) if r.witness is not None}

    @property
    def status(self) -> Dict[int, Status]:
        return {t: r.status for t, r in sorted(self.runs.items())}

    @property
    def w(self) -> Optional[int]:
        feasible = self.feasible_t
        return feasible[0] if feasible else None

    @property
    def W(self) -> Optional[int]:
        feasible = self.feasible_t
        return feasible[-1] if feasible else None

    def to_json(self, timing: bool = True) -> Dict[str, Any]:
        return {
            "feasible_t": self.feasible_t,
            "w": self.w,
            "W": self.W,
            "unknowns": self.unknowns,
            "lower": self.lower,
            "ceiling": self.ceiling,
            "witnesses": {str(t): list(c.colors) for t, c in self.witnesses.items()},
            "runs": [r.to_json(timing) for _, r in sorted(self.runs.items())],
        }


class MaxColoring(BaseModel):
    W: int
    witness: EdgeColoring
    exact: bool  # False: an unknown was met above W, so W is a lower estimate
    runs: List[FeasibilityResult]


class _LimitReached(Exception):
    pass


def edge_order(g: Graph, kind: str) -> List[int]:
    """Order in which the search colors edges."""
    degrees = g.degrees()
    if kind == "input":
        return list(range(g.m))
    if kind == "degree_desc":
        return sorted(range(g.m), key=lambda e: (-(degrees[g.edges[e][0]] + degrees[g.edges[e][1]]), e))
    if kind != "bfs":
        raise ValueError(f"unknown edge order {kind!r}")

    # BFS from a maximum-degree vertex so each new edge touches colored ones
    placed = [False] * g.m
    seen = [False] * g.n
    order: List[int] = []
    starts = sorted((v for v in range(g.n) if degrees[v] > 0), key=lambda v: (-degrees[v], v))
    for start in starts:
        if seen[start]:
            continue
        seen[start] = True
        queue = [start]
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            for y, e in sorted(g.adjacency[x]):
                if not placed[e]:
                    placed[e] = True
                    order.append(e)
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
    return order


class _IntervalSearch:
    """Edge-by-edge backtracking with per-vertex (mask, min, max, count) state."""

    def __init__(self, g: Graph, t: int, cfg: SearchConfig):
        self.g = g
        self.t = t
        self.cfg = cfg
        self.order = edge_order(g, cfg.edge_order)
        self.ends = [g.edges[e] for e in self.order]
        self.deg = g.degrees()
        self.mask = [0] * g.n
        self.lo = [0] * g.n
        self.hi = [0] * g.n
        self.cnt = [0] * g.n
        self.use = [0] * (t + 2)
        self.distinct = 0
        self.assigned = [0] * g.m
        self.nodes = 0
        self.deadline = time.monotonic() + cfg.time_limit
        self.witness: Optional[EdgeColoring] = None

        disabled = cfg.disabled_prunes
        self.check_duplicate = "duplicate" not in disabled
        self.check_window = "window" not in disabled
        self.check_completion = "completion" not in disabled
        self.check_lookahead = "lookahead" not in disabled
        self.break_symmetry = "symmetry" not in disabled

    def run(self) -> bool:
        return self._dfs(0)

    def _leaf(self) -> bool:
        if self.distinct != self.t:
            return False
        candidate = EdgeColoring(t=self.t, colors=tuple(self.assigned))
        if not verify_interval(self.g, candidate).interval_ok:
            return False
        self.witness = candidate
        return True

    def _dfs(self, p: int) -> bool:
        self.nodes += 1
        if self.nodes > self.cfg.node_limit:
            raise _LimitReached("node limit")
        if self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise _LimitReached("time limit")
        m = len(self.order)
        if p == m:
            return self._leaf()

        t = self.t
        u, v = self.ends[p]
        du, dv = self.deg[u], self.deg[v]
        mask, lo, hi, cnt, use = self.mask, self.lo, self.hi, self.cnt, self.use

        low, high = 1, t
        if self.check_window:
            # every incident color must fit a window of width d(x)
            if cnt[u]:
                low = max(low, hi[u] - du + 1)
                high = min(high, lo[u] + du - 1)
            if cnt[v]:
                low = max(low, hi[v] - dv + 1)
                high = min(high, lo[v] + dv - 1)
        if self.break_symmetry and p == 0:
            # reversal c -> t+1-c maps interval colorings to interval colorings
            high = min(high, (t + 1) // 2)

        remaining = m - p - 1
        for c in range(low, high + 1):
            bit = 1 << c
            if self.check_duplicate and (mask[u] & bit or mask[v] & bit):
                continue

            saved = (lo[u], hi[u], lo[v], hi[v])
            new_u = not mask[u] & bit
            new_v = not mask[v] & bit
            mask[u] |= bit
            mask[v] |= bit
            lo[u] = c if cnt[u] == 0 else min(lo[u], c)
            hi[u] = c if cnt[u] == 0 else max(hi[u], c)
            lo[v] = c if cnt[v] == 0 else min(lo[v], c)
            hi[v] = c if cnt[v] == 0 else max(hi[v], c)
            cnt[u] += 1
            cnt[v] += 1
            use[c] += 1
            if use[c] == 1:
                self.distinct += 1
            self.assigned[self.order[p]] = c

            alive = True
            if self.check_completion:
                if cnt[u] == du and hi[u] - lo[u] != du - 1:
                    alive = False
                elif cnt[v] == dv and hi[v] - lo[v] != dv - 1:
                    alive = False
            if alive and self.check_lookahead and t - self.distinct > remaining:
                alive = False

            if alive and self._dfs(p + 1):
                return True

            self.assigned[self.order[p]] = 0
            if use[c] == 1:
                self.distinct -= 1
            use[c] -= 1
            cnt[u] -= 1
            cnt[v] -= 1
            lo[u], hi[u], lo[v], hi[v] = saved
            if new_u:
                mask[u] &= ~bit
            if new_v:
                mask[v] &= ~bit
        return False


def _solve_one(g: Graph, t: int, cfg: SearchConfig) -> FeasibilityResult:
    return SolverAgent(cfg).feasible(g, t)


class SolverAgent:
    """Agent responsible for exact interval-colorability decisions and spectra."""

    def __init__(self, config: Optional[SearchConfig] = None):
        self.name = "solver"
        self.description = "Decides interval t-colorability and computes feasible color-count spectra"
        self.config = config or SearchConfig()

    def feasible(self, g: Graph, t: int, cfg: Optional[SearchConfig] = None) -> FeasibilityResult:
        """
        Decide whether g has an interval t-coloring.

        Args:
            g (Graph): graph with at least one edge
            t (int): declared color count, t >= 1
            cfg (SearchConfig): limits and search options; defaults to the agent's

        Returns:
            FeasibilityResult: feasible with a verified witness, infeasible, or
            unknown when a limit stopped the search
        """
        cfg = cfg or self.config
        if g.m == 0:
            raise ValueError("interval colorings are defined for graphs with at least one edge")
        if t < 1:
            raise ValueError(f"t must be at least 1, got {t}")
        if t > g.m:
            return FeasibilityResult(t=t, status=Status.INFEASIBLE, reason="t exceeds the edge count")

        start = time.monotonic()
        search = _IntervalSearch(g, t, cfg)
        try:
            found = search.run()
        except _LimitReached as limit:
            logger.info("⏱️  t=%d stopped by %s after %d nodes", t, limit, search.nodes)
            return FeasibilityResult(
                t=t, status=Status.UNKNOWN, nodes=search.nodes,
                millis=int((time.monotonic() - start) * 1000), reason=str(limit),
            )
        millis = int((time.monotonic() - start) * 1000)
        if found:
            return FeasibilityResult(t=t, status=Status.FEASIBLE, witness=search.witness,
                                     nodes=search.nodes, millis=millis)
        return FeasibilityResult(t=t, status=Status.INFEASIBLE, nodes=search.nodes, millis=millis)

    def _bounds(self, g: Graph, report: Optional[BoundReport]) -> BoundReport:
        return report or BoundsAgent().upper_bounds(g, compute_profile(g))

    def solve_range(self, g: Graph, ts: Sequence[int], cfg: SearchConfig) -> Dict[int, FeasibilityResult]:
        """Solve each t; with parallel_over_t the runs share a pool of at most Config.THREADS workers."""
        if cfg.parallel_over_t and len(ts) > 1 and Config.THREADS > 1:
            workers = min(Config.THREADS, len(ts))
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_solve_one, [g] * len(ts), ts, [cfg] * len(ts)))
        else:
            results = [self.feasible(g, t, cfg) for t in ts]
        return {r.t: r for r in results}

    def spectrum(self, g: Graph, cfg: Optional[SearchConfig] = None,
                 report: Optional[BoundReport] = None) -> SpectrumResult:
        """Solve every t in [Δ, ceiling]; unknowns are recorded, never dropped."""
        cfg = cfg or self.config
        if g.m == 0:
            raise ValueError("interval colorings are defined for graphs with at least one edge")
        report = self._bounds(g, report)
        ts = list(range(report.floor_lb, report.ceiling + 1))

        if report.not_colorable_reason:
            runs = {t: FeasibilityResult(t=t, status=Status.INFEASIBLE, reason=report.not_colorable_reason)
                    for t in ts}
        else:
            runs = self.solve_range(g, ts, cfg)

        result = SpectrumResult(lower=report.floor_lb, ceiling=report.ceiling, runs=runs)
        feasible = result.feasible_t
        if feasible and feasible != list(range(feasible[0], feasible[-1] + 1)):
            logger.warning("❗ spectrum has a gap: %s", feasible)
        return result

    def max_coloring(self, g: Graph, cfg: Optional[SearchConfig] = None,
                     report: Optional[BoundReport] = None) -> Optional[MaxColoring]:
        """Descend from the ceiling; the first feasible t is W (a lower estimate if an unknown came first)."""
        cfg = cfg or self.config
        if g.m == 0:
            raise ValueError("interval colorings are defined for graphs with at least one edge")
        report = self._bounds(g, report)
        if report.not_colorable_reason:
            return None

        runs: List[FeasibilityResult] = []
        for t in range(report.ceiling, report.floor_lb - 1, -1):
            result = self.feasible(g, t, cfg)
            runs.append(result)
            if result.status is Status.FEASIBLE:
                exact = all(r.status is not Status.UNKNOWN for r in runs)
                if not exact:
                    logger.warning("⚠️  W=%d is a lower estimate: unknowns at %s", t,
                                   [r.t for r in runs if r.status is Status.UNKNOWN])
                return MaxColoring(W=t, witness=result.witness, exact=exact, runs=runs)
        return None

    def run(self, state: Dict[str, Any]) -> Dict[str, Any]:
        """
        Main execution method for the agent.

        Args:
            state (Dict[str, Any]): Current state containing graph and optionally bound_report

        Returns:
            Dict[str, Any]: Updated state with the spectrum
        """
        g = state.get("graph")
        if g is None:
            raise ValueError("graph is required in state")
        result = self.spectrum(g, state.get("search_config"), state.get("bound_report"))
        return {
            **state,
            "spectrum": result,
            "agent_outputs": {
                **state.get("agent_outputs", {}),
                "solver": {
                    "feasible_t": result.feasible_t,
                    "unknowns": result.unknowns,
                    "status": "completed",
                },
            },
        }
