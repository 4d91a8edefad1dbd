"""
Audit Agent

This agent builds the audit corpus from a config file, solves every graph and
aggregates four invariant suites: bound soundness, certifier replay, family
oracles and oracle equivalence against naive enumeration.

Input: audit_config (AuditConfig)
Output: audit_report (AuditReport)
"""

import json
import logging
import math
import random
from itertools import product
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt, ValidationError, model_validator

from agents.bounds import BoundsAgent, BoundReport
from agents.certifier import CertifierAgent
from agents.solver import FeasibilityResult, SearchConfig, SolverAgent, SpectrumResult, Status
from config import Config
from families import FamilySpec, ExpectedSpectrum, expected_spectrum, family, generate, random_planar
from graph_core import Graph, GraphClassProfile, parse_graph, parse_graph6_lines, profile as compute_profile

logger = logging.getLogger(__name__)

SUITES = ("bound_soundness", "certifier_replay", "family_oracles", "oracle_equivalence")

SuiteStatus = Literal["pass", "fail", "unknown"]


class AuditConfigError(ValueError):
    """Raised when the audit config file cannot be read or validated."""


class RandomPlanarSource(BaseModel):
    count: PositiveInt
    n_min: int = Field(default=4, ge=2)
    n_max: int = Field(default=9, ge=2)
    extra_edges: int = Field(default=6, ge=0)  # edges beyond a spanning tree, capped by planarity


class CorpusSource(BaseModel):
    """Exactly one of family, random_planar or file."""

    family: Optional[str] = None
    params: List[List[int]] = []
    random_planar: Optional[RandomPlanarSource] = None
    file: Optional[str] = None
    format: Literal["edge_list", "graph6"] = "graph6"

    @model_validator(mode="after")
    def _one_source(self) -> "CorpusSource":
        chosen = [x for x in (self.family, self.random_planar, self.file) if x is not None]
        if len(chosen) != 1:
            raise ValueError("each corpus entry needs exactly one of family, random_planar or file")
        if self.family is not None and not self.params:
            raise ValueError(f"family {self.family!r} needs a params list")
        return self


class AuditLimits(BaseModel):
    node_limit: PositiveInt = Field(default_factory=lambda: Config.NODE_LIMIT)
    time_limit: PositiveFloat = Field(default_factory=lambda: Config.TIME_LIMIT)
    edge_order: Literal["bfs", "degree_desc", "input"] = Field(default_factory=lambda: Config.EDGE_ORDER)
    oracle_max_edges: int = Field(default=8, ge=0)
    full_range_max_edges: int = Field(default=9, ge=0)  # search every t in 1..m up to this size
    parallel: bool = False
    naive_limit: PositiveInt = Field(default_factory=lambda: Config.NAIVE_LIMIT)


class AuditConfig(BaseModel):
    corpus: List[CorpusSource] = []
    limits: AuditLimits = Field(default_factory=AuditLimits)
    seed: int = Field(default_factory=lambda: Config.DEFAULT_SEED)
    suites: List[Literal["bound_soundness", "certifier_replay", "family_oracles", "oracle_equivalence"]] = \
        list(SUITES)


class CorpusGraph(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    label: str
    graph: Graph
    spec: Optional[FamilySpec] = None


class SuiteResult(BaseModel):
    name: str
    status: SuiteStatus = "pass"
    checked: int = 0
    failures: List[Dict[str, Any]] = []
    unknowns: List[str] = []
    notes: List[str] = []

    def settle(self) -> "SuiteResult":
        if self.failures:
            self.status = "fail"
        elif self.unknowns:
            self.status = "unknown"
        return self


class AuditReport(BaseModel):
    status: SuiteStatus
    corpus_size: int
    suites: List[SuiteResult]
    warnings: List[str] = []


def load_audit_config(path: str) -> AuditConfig:
    try:
        with open(path, "r") as f:
            raw = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise AuditConfigError(f"cannot read audit config {path}: {e}") from None
    try:
        return AuditConfig.model_validate(raw)
    except ValidationError as e:
        raise AuditConfigError(f"invalid audit config {path}: {e}") from None


def naive_feasible(g: Graph, t: int, budget: int) -> Optional[bool]:
    """Enumerate all t^m assignments against the definition; None when t^m exceeds the budget."""
    if t ** g.m > budget:
        return None
    incident = [[e for _, e in g.adjacency[v]] for v in range(g.n)]
    wanted = set(range(1, t + 1))
    for colors in product(range(1, t + 1), repeat=g.m):
        if set(colors) != wanted:
            continue
        ok = True
        for edges in incident:
            if not edges:
                continue
            palette = {colors[e] for e in edges}
            if len(palette) != len(edges) or max(palette) - min(palette) != len(edges) - 1:
                ok = False
                break
        if ok:
            return True
    return False


def matches_expected(expected: ExpectedSpectrum, result: SpectrumResult) -> bool:
    feasible = result.feasible_t
    if expected.kind == "interval":
        return feasible == list(range(expected.lo, expected.hi + 1))
    if expected.kind == "exact_w":
        return result.W == expected.W
    if expected.kind == "not_colorable":
        return not feasible
    return True


class AuditAgent:
    """Agent responsible for aggregating the invariant suites over a corpus."""

    def __init__(self, cache=None):
        self.name = "auditor"
        self.description = "Builds the audit corpus and evaluates the invariant suites"
        self.cache = cache
        self.bounds = BoundsAgent()
        self.certifier = CertifierAgent()

    def build_corpus(self, config: AuditConfig) -> List[CorpusGraph]:
        corpus: List[CorpusGraph] = []
        for source in config.corpus:
            if source.family is not None:
                for params in source.params:
                    spec = family(source.family, *params)
                    corpus.append(CorpusGraph(label=spec.label, graph=generate(spec), spec=spec))
            elif source.random_planar is not None:
                corpus.extend(self._random_planar_corpus(source.random_planar, config.seed))
            else:
                try:
                    with open(source.file, "r") as f:
                        text = f.read()
                except OSError as e:
                    raise AuditConfigError(f"cannot read corpus file {source.file}: {e}") from None
                graphs = parse_graph6_lines(text) if source.format == "graph6" else [parse_graph(text)]
                corpus.extend(CorpusGraph(label=f"{source.file}#{i}", graph=g) for i, g in enumerate(graphs))
        return corpus

    def _random_planar_corpus(self, source: RandomPlanarSource, seed: int) -> List[CorpusGraph]:
        if source.n_min > source.n_max:
            raise AuditConfigError(f"random_planar n_min {source.n_min} exceeds n_max {source.n_max}")
        rng = random.Random(seed)
        graphs = []
        for i in range(source.count):
            n = rng.randint(source.n_min, source.n_max)
            cap = 1 if n == 2 else 3 * n - 6
            m = min(cap, n - 1 + rng.randint(0, source.extra_edges))
            graph_seed = rng.randrange(2 ** 31)
            graphs.append(CorpusGraph(label=f"random_planar(n={n},m={m},seed={graph_seed})",
                                      graph=random_planar(n, m, graph_seed)))
        return graphs

    def _solve(self, g: Graph, solver: SolverAgent, report: BoundReport) -> SpectrumResult:
        if self.cache is not None:
            cached = self.cache.lookup(g, solver.config)
            if cached is not None:
                return cached
        result = solver.spectrum(g, report=report)
        if self.cache is not None:
            self.cache.add_result(g, solver.config, result)
        return result

    def _full_runs(self, g: Graph, solver: SolverAgent, result: SpectrumResult,
                   limits: AuditLimits) -> Dict[int, FeasibilityResult]:
        """Spectrum runs, extended to every t in 1..m when the graph is small enough."""
        runs = dict(result.runs)
        if g.m > max(limits.full_range_max_edges, limits.oracle_max_edges):
            return runs
        missing = [t for t in range(1, g.m + 1) if t not in runs]
        runs.update(solver.solve_range(g, missing, solver.config))
        return runs

    def _bound_soundness(self, item: CorpusGraph, p: GraphClassProfile, report: BoundReport,
                         runs: Dict[int, FeasibilityResult], suite: SuiteResult) -> None:
        g = item.graph
        limits = {"ceiling": report.ceiling}
        if p.is_planar:
            limits["planar"] = math.floor((3 * g.n - 4) / 2)
        if p.is_outerplanar:
            limits["outerplanar"] = g.n - 1
        if p.is_triangle_free:
            limits["triangle_free"] = g.n - 1
        unknowns = []
        for t, run in sorted(runs.items()):
            if run.status is Status.UNKNOWN:
                unknowns.append(t)
            if run.status is not Status.FEASIBLE:
                continue
            suite.checked += 1
            if t < report.floor_lb:
                suite.failures.append({"graph": item.label, "t": t, "violated": "max_degree",
                                       "limit": report.floor_lb})
            if report.not_colorable_reason:
                suite.failures.append({"graph": item.label, "t": t, "violated": "class_2",
                                       "reason": report.not_colorable_reason})
            for name, limit in limits.items():
                if t > limit:
                    suite.failures.append({"graph": item.label, "t": t, "violated": name, "limit": limit})
        if unknowns:
            suite.unknowns.append(f"{item.label}: t={unknowns}")

    def _family_oracle(self, item: CorpusGraph, result: SpectrumResult, suite: SuiteResult) -> None:
        if item.spec is None:
            return
        expected = expected_spectrum(item.spec)
        if expected.kind == "unknown":
            suite.notes.append(f"{item.label}: no known answer")
            return
        suite.checked += 1
        if matches_expected(expected, result):
            return
        entry = {"graph": item.label, "expected": expected.model_dump(), "feasible_t": result.feasible_t,
                 "unknowns": result.unknowns}
        if result.unknowns:
            suite.unknowns.append(f"{item.label}: t={result.unknowns}")
        else:
            suite.failures.append(entry)

    def _oracle_equivalence(self, item: CorpusGraph, runs: Dict[int, FeasibilityResult], limits: AuditLimits,
                            suite: SuiteResult) -> None:
        g = item.graph
        if g.m > limits.oracle_max_edges:
            return
        for t, run in sorted(runs.items()):
            expected = naive_feasible(g, t, limits.naive_limit)
            if expected is None:
                suite.notes.append(f"{item.label}: t={t} exceeds the naive budget")
                continue
            suite.checked += 1
            if run.status is Status.UNKNOWN:
                suite.unknowns.append(f"{item.label}: t={t}")
            elif (run.status is Status.FEASIBLE) != expected:
                suite.failures.append({"graph": item.label, "t": t, "solver": run.status.value,
                                       "naive": "feasible" if expected else "infeasible"})

    def audit(self, config: AuditConfig) -> AuditReport:
        """
        Solve every corpus graph and evaluate the configured suites.

        Args:
            config (AuditConfig): corpus sources, limits, seed and suite selection

        Returns:
            AuditReport: per-suite status; overall fail if any suite fails,
            unknown if the only non-passing suites are unknown
        """
        corpus = self.build_corpus(config)
        solver = SolverAgent(SearchConfig(node_limit=config.limits.node_limit,
                                          time_limit=config.limits.time_limit,
                                          edge_order=config.limits.edge_order,
                                          parallel_over_t=config.limits.parallel))
        suites = {name: SuiteResult(name=name) for name in config.suites}
        warnings: List[str] = []
        if not corpus:
            warnings.append("empty corpus: every suite passes vacuously")
            logger.warning("⚠️  %s", warnings[-1])

        solved = []
        for item in corpus:
            g = item.graph
            if g.m == 0:
                warnings.append(f"{item.label}: edgeless graph skipped")
                continue
            p = compute_profile(g)
            report = self.bounds.upper_bounds(g, p)
            result = self._solve(g, solver, report)
            solved.append((item, result))
            logger.info("🔍 %s: feasible_t=%s unknowns=%s", item.label, result.feasible_t, result.unknowns)
            if "bound_soundness" in suites or "oracle_equivalence" in suites:
                runs = self._full_runs(g, solver, result, config.limits)

            if "bound_soundness" in suites:
                self._bound_soundness(item, p, report, runs, suites["bound_soundness"])
            if "family_oracles" in suites:
                self._family_oracle(item, result, suites["family_oracles"])
            if "oracle_equivalence" in suites:
                self._oracle_equivalence(item, runs, config.limits, suites["oracle_equivalence"])

        if "certifier_replay" in suites:
            suite = suites["certifier_replay"]
            summary = self.certifier.audit_corpus([(item.graph, result) for item, result in solved],
                                                  [item.label for item, _ in solved])
            suite.checked = summary.certified
            suite.failures = summary.failures
            suite.notes = summary.skipped

        results = [suites[name].settle() for name in config.suites]
        if any(s.status == "fail" for s in results):
            status: SuiteStatus = "fail"
        elif any(s.status == "unknown" for s in results):
            status = "unknown"
        else:
            status = "pass"
        return AuditReport(status=status, corpus_size=len(corpus), suites=results, warnings=warnings)

    def run(self, state: Dict[str, Any]) -> Dict[str, Any]:
        """
        Main execution method for the agent.

        Args:
            state (Dict[str, Any]): Current state containing audit_config

        Returns:
            Dict[str, Any]: Updated state with the audit report
        """
        config = state.get("audit_config")
        if config is None:
            raise ValueError("audit_config is required in state")
        report = self.audit(config)
        return {
            **state,
            "audit_report": report,
            "agent_outputs": {
                **state.get("agent_outputs", {}),
                "auditor": {
                    "suites": {s.name: s.status for s in report.suites},
                    "status": "completed",
                },
            },
        }
