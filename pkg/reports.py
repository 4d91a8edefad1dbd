"""
reports.py

JSON report serialization, the human-readable view derived from it, and the
run manifest that pins inputs, seed and configuration for reproducible runs.
"""

import json
from typing import Any, Dict, List

from pydantic import BaseModel

TOOL_VERSION = "0.1.0"

TIMING_KEYS = frozenset({"millis", "wall_time"})

_STATUS_MARKS = {
    "feasible": "✅", "pass": "✅", True: "✅",
    "infeasible": "❌", "fail": "❌", False: "❌",
    "unknown": "❔",
}


def dumps(payload: Any) -> str:
    """Canonical JSON: parsing the output and dumping it again gives the same bytes."""
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)


def strip_timing(payload: Any) -> Any:
    if isinstance(payload, dict):
        return {k: strip_timing(v) for k, v in payload.items() if k not in TIMING_KEYS}
    if isinstance(payload, list):
        return [strip_timing(v) for v in payload]
    return payload


def _scalar(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value):
        return "[" + ", ".join(str(v) for v in value) + "]"
    return str(value)


def _render(payload: Any, indent: int, lines: List[str]) -> None:
    pad = "   " * indent
    if isinstance(payload, dict):
        for key in sorted(payload):
            value = payload[key]
            if isinstance(value, dict) or (isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value)):
                lines.append(f"{pad}{key}:")
                _render(value, indent + 1, lines)
            else:
                mark = ""
                if key in ("status", "passed", "interval") and isinstance(value, (str, bool)):
                    mark = _STATUS_MARKS.get(value, "")
                lines.append(f"{pad}{key}: {_scalar(value)} {mark}".rstrip())
    elif isinstance(payload, list):
        for item in payload:
            if isinstance(item, dict):
                lines.append(f"{pad}-")
                _render(item, indent + 1, lines)
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(payload)}")


def render_pretty(command: str, payload: Dict[str, Any]) -> str:
    """Human-readable view of a JSON report; it never adds facts the JSON lacks."""
    lines = ["=" * 60, f"📊 {command.upper()} REPORT", "=" * 60]
    _render(payload, 0, lines)
    return "\n".join(lines)


class RunManifest(BaseModel):
    """Everything needed to re-run a command and compare its results payload."""

    command: str
    argv: List[str]
    input_digests: Dict[str, str]
    seed: int
    config: Dict[str, Any]
    tool_version: str = TOOL_VERSION
    wall_time: float
    results: Dict[str, Any]

    def write(self, path: str) -> None:
        with open(path, "w") as f:
            f.write(dumps(self.model_dump(mode="json")) + "\n")
