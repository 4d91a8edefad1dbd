"""
Configuration file for the interval spectrum toolkit

This file handles search limits, worker counts, seeds and logging settings.
"""

import logging
import os
import sys
from typing import Optional
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

EDGE_ORDERS = ("bfs", "degree_desc", "input")


def _env_int(name: str, default: int) -> int:
    try:
        return int(os.getenv(name, str(default)))
    except ValueError:
        return default


def _env_float(name: str, default: float) -> float:
    try:
        return float(os.getenv(name, str(default)))
    except ValueError:
        return default


class Config:
    """Configuration class for the application."""

    # Worker pool
    THREADS: int = max(1, _env_int("INTERVAL_SPECTRUM_THREADS", os.cpu_count() or 1))

    # Search limits
    NODE_LIMIT: int = _env_int("INTERVAL_SPECTRUM_NODE_LIMIT", 2_000_000)
    TIME_LIMIT: float = _env_float("INTERVAL_SPECTRUM_TIME_LIMIT", 60.0)
    EDGE_ORDER: str = os.getenv("INTERVAL_SPECTRUM_EDGE_ORDER", "bfs")

    # Naive oracle budget (t ** m assignments)
    NAIVE_LIMIT: int = _env_int("INTERVAL_SPECTRUM_NAIVE_LIMIT", 400_000)

    # Reproducibility
    DEFAULT_SEED: int = _env_int("INTERVAL_SPECTRUM_SEED", 0)

    LOG_LEVEL: str = os.getenv("INTERVAL_SPECTRUM_LOG_LEVEL", "WARNING")
    CACHE_FILE: Optional[str] = os.getenv("INTERVAL_SPECTRUM_CACHE_FILE")

    @classmethod
    def validate_config(cls) -> bool:
        """Validate that the configured values are usable."""
        logger = logging.getLogger(__name__)
        ok = True
        if cls.NODE_LIMIT <= 0:
            logger.warning("⚠️  INTERVAL_SPECTRUM_NODE_LIMIT must be positive, got %s", cls.NODE_LIMIT)
            ok = False
        if cls.TIME_LIMIT <= 0:
            logger.warning("⚠️  INTERVAL_SPECTRUM_TIME_LIMIT must be positive, got %s", cls.TIME_LIMIT)
            ok = False
        if cls.EDGE_ORDER not in EDGE_ORDERS:
            logger.warning("⚠️  INTERVAL_SPECTRUM_EDGE_ORDER must be one of %s, got %r", EDGE_ORDERS, cls.EDGE_ORDER)
            ok = False
        return ok

    @classmethod
    def print_config(cls):
        """Print current configuration."""
        print("🔧 Current Configuration:", file=sys.stderr)
        print(f"   Threads: {cls.THREADS}", file=sys.stderr)
        print(f"   Node Limit: {cls.NODE_LIMIT}", file=sys.stderr)
        print(f"   Time Limit: {cls.TIME_LIMIT}s", file=sys.stderr)
        print(f"   Edge Order: {cls.EDGE_ORDER}", file=sys.stderr)
        print(f"   Naive Oracle Limit: {cls.NAIVE_LIMIT}", file=sys.stderr)
        print(f"   Default Seed: {cls.DEFAULT_SEED}", file=sys.stderr)
        print(f"   Cache File: {cls.CACHE_FILE or '❌ Not set'}", file=sys.stderr)


def configure_logging(level: Optional[str] = None) -> None:
    """Route module loggers to stderr; stdout carries reports only."""
    logging.basicConfig(
        level=(level or Config.LOG_LEVEL).upper(),
        format="[%(name)s] %(message)s",
        stream=sys.stderr,
        force=True,
    )


# Example .env file content:
ENV_EXAMPLE = """
# Create a .env file in the project root with:
INTERVAL_SPECTRUM_THREADS=4
INTERVAL_SPECTRUM_NODE_LIMIT=2000000
INTERVAL_SPECTRUM_TIME_LIMIT=60
INTERVAL_SPECTRUM_EDGE_ORDER=bfs
INTERVAL_SPECTRUM_SEED=0
INTERVAL_SPECTRUM_LOG_LEVEL=INFO
"""
