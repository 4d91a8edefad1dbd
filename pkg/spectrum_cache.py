"""
Spectrum Cache System

This module stores solved spectra in a JSON file so repeated audits and CLI
runs on the same graph and search limits skip the search.
"""

import hashlib
import json
import logging
import os
from datetime import datetime
from typing import Any, Dict, Optional

from agents.solver import SearchConfig, SpectrumResult
from graph_core import Graph, digest

logger = logging.getLogger(__name__)


class SpectrumCache:
    """Cache of complete spectra keyed by graph digest and search limits."""

    def __init__(self, cache_file: str):
        self.cache_file = cache_file
        self.cache = self._load_cache()

    def _load_cache(self) -> Dict[str, Any]:
        """Load cache from file."""
        if os.path.exists(self.cache_file):
            try:
                with open(self.cache_file, "r") as f:
                    return json.load(f)
            except (OSError, json.JSONDecodeError) as e:
                logger.warning("⚠️  Could not load cache file %s: %s", self.cache_file, e)
        return {"results": {}}

    def _save_cache(self):
        try:
            with open(self.cache_file, "w") as f:
                json.dump(self.cache, f, indent=2, sort_keys=True)
        except OSError as e:
            logger.warning("⚠️  Could not save cache file %s: %s", self.cache_file, e)

    def _key(self, g: Graph, cfg: SearchConfig) -> str:
        limits = f"{cfg.node_limit}|{cfg.time_limit}|{cfg.edge_order}|{','.join(sorted(cfg.disabled_prunes))}"
        return hashlib.sha256(f"{digest(g)}|{limits}".encode()).hexdigest()

    def lookup(self, g: Graph, cfg: SearchConfig) -> Optional[SpectrumResult]:
        entry = self.cache["results"].get(self._key(g, cfg))
        if entry is None:
            return None
        logger.info("🧠 cache hit for %s", digest(g)[:12])
        return SpectrumResult.model_validate(entry["spectrum"])

    def add_result(self, g: Graph, cfg: SearchConfig, result: SpectrumResult) -> bool:
        """Store a spectrum; spectra with unknowns depend on timing and are skipped."""
        if result.unknowns:
            return False
        self.cache["results"][self._key(g, cfg)] = {
            "timestamp": datetime.now().isoformat(),
            "digest": digest(g),
            "spectrum": result.model_dump(mode="json"),
        }
        self._save_cache()
        return True

    def get_stats(self) -> Dict[str, Any]:
        results = self.cache["results"].values()
        return {
            "total_results": len(results),
            "graphs": len({r["digest"] for r in results}),
        }

    def clear_cache(self):
        self.cache = {"results": {}}
        self._save_cache()
        logger.info("🧠 Spectrum cache cleared")
