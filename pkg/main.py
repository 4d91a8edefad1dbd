"""
Interval Spectrum Toolkit - Main Orchestrator

This is the command-line entry point tying the agents together: verify, solve,
spectrum, bounds, certify, generate, oracle, audit and hunt.

Flow: Graph Input → Bounds → Solver → Certifier (per witness) → Report
"""

import argparse
import hashlib
import logging
import sys
import time
from typing import Any, Dict, List, Optional

from agents.auditor import AuditAgent, load_audit_config, matches_expected
from agents.bounds import BoundsAgent
from agents.certifier import CertifierAgent
from agents.solver import SearchConfig, SolverAgent, Status
from coloring import coloring_report, parse_coloring, serialize_coloring, verify_interval
from config import Config, configure_logging, EDGE_ORDERS
from families import (FAMILY_KINDS, FamilyError, expected_spectrum, family, generate,
                      k4_chain_coloring, random_planar, sharpness_candidates)
from graph_core import GRAPH_FORMATS, Graph, GraphFormatError, detect_format, digest, parse_graph, serialize_graph
from reports import RunManifest, dumps, render_pretty, strip_timing
from spectrum_cache import SpectrumCache

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    """Usage errors exit 1; exit 2 is reserved for negative outcomes under --strict."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


class IntervalSpectrumOrchestrator:
    """Main orchestrator for the interval spectrum toolkit."""

    def __init__(self, search_config: Optional[SearchConfig] = None, cache: Optional[SpectrumCache] = None,
                 componentwise_diameter: bool = False, report_slack: bool = True):
        """Initialize all agents."""
        self.search_config = search_config or SearchConfig()
        self.cache = cache
        self.bounds = BoundsAgent(componentwise_diameter=componentwise_diameter)
        self.solver = SolverAgent(self.search_config)
        self.certifier = CertifierAgent(report_slack=report_slack)
        self.auditor = AuditAgent(cache=cache)
        self.input_digests: Dict[str, str] = {}

    def _read(self, path: str, role: str) -> str:
        try:
            if path == "-":
                text = sys.stdin.read()
            else:
                with open(path, "r") as f:
                    text = f.read()
        except OSError as e:
            raise GraphFormatError(f"cannot read {role} file {path}: {e}") from None
        self.input_digests[role] = hashlib.sha256(text.encode()).hexdigest()
        return text

    def load_graph(self, path: str, format: str = "auto") -> Graph:
        text = self._read(path, "graph")
        g = parse_graph(text, detect_format(text) if format == "auto" else format)
        self.input_digests["graph"] = digest(g)
        return g

    def verify(self, g: Graph, coloring_path: str) -> Dict[str, Any]:
        c = parse_coloring(self._read(coloring_path, "coloring"))
        payload = coloring_report(g, c)
        return {"payload": payload, "negative": not payload["interval"]}

    def solve(self, g: Graph, t: Optional[int], maximize: bool) -> Dict[str, Any]:
        if maximize:
            best = self.solver.max_coloring(g, self.search_config, self.bounds.upper_bounds(g))
            if best is None:
                return {"payload": {"W": None, "witness": None, "exact": None, "runs": []}, "negative": True}
            payload = {
                "W": best.W,
                "witness": list(best.witness.colors),
                "exact": best.exact,
                "runs": [r.to_json() for r in best.runs],
            }
            return {"payload": payload, "negative": False, "unknown": not best.exact}
        result = self.solver.feasible(g, t, self.search_config)
        return {"payload": result.to_json(), "negative": result.status is Status.INFEASIBLE,
                "unknown": result.status is Status.UNKNOWN}

    def spectrum(self, g: Graph) -> Dict[str, Any]:
        result = self.cache.lookup(g, self.search_config) if self.cache else None
        if result is None:
            result = self.solver.spectrum(g, self.search_config, self.bounds.upper_bounds(g))
            if self.cache:
                self.cache.add_result(g, self.search_config, result)
        return {"payload": result.to_json(), "negative": not result.feasible_t, "unknown": bool(result.unknowns)}

    def bounds_report(self, g: Graph, explain: bool) -> Dict[str, Any]:
        report = self.bounds.upper_bounds(g)
        payload = report.to_json()
        if explain:
            payload["explain"] = self.bounds.explain(report).splitlines()
        return {"payload": payload, "negative": report.not_colorable_reason is not None}

    def certify(self, g: Graph, coloring_path: str, chain: str) -> Dict[str, Any]:
        c = parse_coloring(self._read(coloring_path, "coloring"))
        certificate = self.certifier.build_certificate(g, c, chain=chain)
        payload = certificate.model_dump(mode="json")
        payload["passed"] = certificate.passed
        return {"payload": payload, "negative": not certificate.passed}

    def generate(self, kind: str, params: List[int], m: Optional[int], seed: int, format: str) -> Dict[str, Any]:
        if kind == "random_planar":
            if len(params) != 1 or m is None:
                raise FamilyError("random_planar needs --n and --m")
            g = random_planar(params[0], m, seed)
            meta: Dict[str, Any] = {"family": kind, "parameters": [params[0], m], "seed": seed}
        else:
            spec = family(kind, *params)
            g = generate(spec)
            meta = {"family": kind, "parameters": list(spec.parameters)}
        payload = {**meta, "n": g.n, "m": g.m, "format": format,
                   "graph": serialize_graph(g, format), "digest": digest(g)}
        return {"payload": payload, "negative": False}

    def oracle(self, kind: str, params: List[int]) -> Dict[str, Any]:
        spec = family(kind, *params)
        g = generate(spec)
        expected = expected_spectrum(spec)
        result = self.solver.spectrum(g, self.search_config, self.bounds.upper_bounds(g))
        match = None if expected.kind == "unknown" else matches_expected(expected, result)
        payload = {"family": spec.label, "expected": expected.model_dump(), "spectrum": result.to_json(),
                   "match": match}
        return {"payload": payload, "negative": match is False and not result.unknowns,
                "unknown": bool(result.unknowns)}

    def audit(self, config_path: str, seed: Optional[int]) -> Dict[str, Any]:
        config = load_audit_config(config_path)
        if seed is not None:
            config = config.model_copy(update={"seed": seed})
        if self.search_config.parallel_over_t:
            config.limits = config.limits.model_copy(update={"parallel": True})
        state = self.auditor.run({"audit_config": config, "agent_outputs": {}})
        report = state["audit_report"]
        return {"payload": report.model_dump(mode="json"), "negative": report.status == "fail",
                "unknown": report.status == "unknown"}

    def hunt(self, n: int, seed: int, count: int) -> Dict[str, Any]:
        """Look for a planar graph on n vertices with an interval floor((3n-4)/2)-coloring and certify it."""
        target = (3 * n - 4) // 2
        tried = []
        for label, g in sharpness_candidates(n, seed, count):
            if label.startswith("k4_chain"):
                witness, source = k4_chain_coloring(g, (n - 2) // 2), "construction"
                status = "feasible" if verify_interval(g, witness).interval_ok else "infeasible"
            else:
                result = self.solver.feasible(g, target, self.search_config)
                witness, source, status = result.witness, "search", result.status.value
            tried.append({"candidate": label, "status": status, "source": source})
            logger.info("🎯 %s: %s", label, status)
            if status != "feasible":
                continue
            certificate = self.certifier.build_certificate(g, witness, chain="planar")
            payload = {
                "n": n, "target": target, "reproduced": certificate.passed,
                "candidate": label, "source": source,
                "graph": serialize_graph(g), "witness": serialize_coloring(witness),
                "certificate_passed": certificate.passed, "derived_bound": str(certificate.derived_bound),
                "tried": tried,
            }
            return {"payload": payload, "negative": not certificate.passed}
        payload = {"n": n, "target": target, "reproduced": False, "result": "not reproduced", "tried": tried}
        return {"payload": payload, "negative": False,
                "unknown": any(x["status"] == "unknown" for x in tried)}

    def execute(self, args: argparse.Namespace) -> Dict[str, Any]:
        """Dispatch a parsed command; domain errors become {"status": "error"}."""
        seed = args.seed if args.seed is not None else Config.DEFAULT_SEED
        try:
            command = args.command
            if command == "generate":
                params = args.params or ([args.n] if args.n is not None else [])
                outcome = self.generate(args.family, params, args.m, seed, args.out_format)
            elif command == "oracle":
                outcome = self.oracle(args.family, args.params or ([args.n] if args.n is not None else []))
            elif command == "audit":
                outcome = self.audit(args.config, args.seed)
            elif command == "hunt":
                outcome = self.hunt(args.n, seed, args.count)
            else:
                g = self.load_graph(args.graph, args.format)
                if command == "verify":
                    outcome = self.verify(g, args.coloring)
                elif command == "solve":
                    if args.t is None and not args.max:
                        raise ValueError("solve needs --t N or --max")
                    outcome = self.solve(g, args.t, args.max)
                elif command == "spectrum":
                    outcome = self.spectrum(g)
                elif command == "bounds":
                    outcome = self.bounds_report(g, args.explain)
                else:
                    outcome = self.certify(g, args.coloring, args.chain)
        except ValueError as e:
            # domain errors and solver preconditions (t < 1, edgeless graph) are all input errors
            logger.error("❌ %s", e)
            return {"status": "error", "error": str(e)}
        return {"status": "ok", **outcome}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable report instead of JSON")
    common.add_argument("--strict", action="store_true", help="exit 2 on infeasible or failed-check outcomes")
    common.add_argument("--manifest", metavar="FILE", help="write a run manifest")
    common.add_argument("--seed", type=int, help=f"random seed (default {Config.DEFAULT_SEED})")
    common.add_argument("--cache", metavar="FILE", help="spectrum cache file")
    common.add_argument("--node-limit", type=int, help="search-tree node cap per t")
    common.add_argument("--time-limit", type=float, help="wall seconds per t")
    common.add_argument("--edge-order", choices=EDGE_ORDERS, help="edge order of the search")
    common.add_argument("--parallel", action="store_true", help="solve distinct t in a process pool")
    common.add_argument("--format", default="auto", choices=("auto",) + GRAPH_FORMATS, help="graph input format")
    common.add_argument("--log-level", help=f"logging level (default {Config.LOG_LEVEL})")

    parser = _Parser(prog="interval-spectrum", description="Interval edge-coloring toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check a coloring")
    p.add_argument("--graph", required=True)
    p.add_argument("--coloring", required=True)

    p = sub.add_parser("solve", parents=[common], help="decide one t, or find W with --max")
    p.add_argument("--graph", required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--max", action="store_true")

    p = sub.add_parser("spectrum", parents=[common], help="all feasible t between the bounds")
    p.add_argument("--graph", required=True)

    p = sub.add_parser("bounds", parents=[common], help="evaluate the bound catalog")
    p.add_argument("--graph", required=True)
    p.add_argument("--explain", action="store_true")
    p.add_argument("--componentwise-diameter", action="store_true")

    p = sub.add_parser("certify", parents=[common], help="replay the decomposition proof on a coloring")
    p.add_argument("--graph", required=True)
    p.add_argument("--coloring", required=True)
    p.add_argument("--chain", default="auto", choices=("planar", "outerplanar", "auto"))
    p.add_argument("--no-slack", action="store_true")

    p = sub.add_parser("generate", parents=[common], help="emit a family member or random planar graph")
    p.add_argument("--family", required=True, choices=FAMILY_KINDS + ("random_planar",))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--params", type=int, nargs="+")
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--out-format", default="edge_list", choices=GRAPH_FORMATS)

    p = sub.add_parser("oracle", parents=[common], help="compare a family's spectrum with the known answer")
    p.add_argument("--family", required=True, choices=FAMILY_KINDS)
    p.add_argument("--n", type=int)
    p.add_argument("--params", type=int, nargs="+")

    p = sub.add_parser("audit", parents=[common], help="run the invariant suites over a corpus")
    p.add_argument("--config", default="audit_config.json")

    p = sub.add_parser("hunt", parents=[common], help="search for a sharp planar instance")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--count", type=int, default=4)
    return parser


def _search_config(args: argparse.Namespace) -> SearchConfig:
    overrides: Dict[str, Any] = {"parallel_over_t": args.parallel}
    if args.node_limit is not None:
        overrides["node_limit"] = args.node_limit
    if args.time_limit is not None:
        overrides["time_limit"] = args.time_limit
    if args.edge_order is not None:
        overrides["edge_order"] = args.edge_order
    return SearchConfig(**overrides)


def _dispatch(args: argparse.Namespace, argv: List[str]) -> int:
    started = time.monotonic()
    try:
        search_config = _search_config(args)
    except ValueError as e:
        logger.error("❌ %s", e)
        return 1
    cache_file = args.cache or Config.CACHE_FILE
    orchestrator = IntervalSpectrumOrchestrator(
        search_config,
        SpectrumCache(cache_file) if cache_file else None,
        componentwise_diameter=getattr(args, "componentwise_diameter", False),
        report_slack=not getattr(args, "no_slack", False),
    )
    result = orchestrator.execute(args)
    if result["status"] == "error":
        return 1

    payload = result["payload"]
    if args.command == "generate" and args.out:
        with open(args.out, "w") as f:
            f.write(payload["graph"] + "\n")
    print(render_pretty(args.command, payload) if args.pretty else dumps(payload))

    if args.manifest:
        RunManifest(
            command=args.command,
            argv=list(argv),
            input_digests=orchestrator.input_digests,
            seed=args.seed if args.seed is not None else Config.DEFAULT_SEED,
            config=search_config.model_dump(mode="json"),
            wall_time=round(time.monotonic() - started, 3),
            results=strip_timing(payload),
        ).write(args.manifest)

    if args.command == "audit":
        return 2 if result["negative"] else (3 if result.get("unknown") else 0)
    if args.strict and result["negative"]:
        return 2
    return 0


def run(argv: List[str]) -> int:
    """Parse argv, execute, print the report; return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 1
    configure_logging(args.log_level)
    Config.validate_config()
    try:
        return _dispatch(args, argv)
    except Exception:
        logger.exception("💥 %s failed", args.command)
        return 1


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
