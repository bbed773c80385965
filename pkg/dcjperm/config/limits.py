"""
Limits Configuration

Guard defaults for the exhaustive computations and the environment variables
that override them. Every getter re-reads the environment so a `.env` loaded by
the CLI (or a monkeypatched variable in tests) takes effect immediately.
"""

import logging
import os

logger = logging.getLogger(__name__)

# Default guards
BFS_MAX_N = 5
ENUM_MAX_N = 6
SCENARIO_MAX_D = 5
MAX_REGIONS = 1_000_000
ORACLE_TIMEOUT_SECONDS = 60.0

DEFAULT_LOG_LEVEL = "WARNING"


def _int_from_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"⚠️ Ignoring {name}={raw!r}: not an integer, using {default}")
        return default


def get_bfs_max_n() -> int:
    """Largest n the BFS oracle explores without --allow-large."""
    return _int_from_env("DCJPERM_BFS_MAX_N", BFS_MAX_N)


def get_enum_max_n() -> int:
    """Largest n for which the genome space is listed without --allow-large."""
    return _int_from_env("DCJPERM_ENUM_MAX_N", ENUM_MAX_N)


def get_scenario_max_d() -> int:
    """Largest distance for exhaustive scenario enumeration."""
    return _int_from_env("DCJPERM_SCENARIO_MAX_D", SCENARIO_MAX_D)


def get_max_regions() -> int:
    """Input cap on n for the closed-form commands."""
    return _int_from_env("DCJPERM_MAX_REGIONS", MAX_REGIONS)


def get_oracle_timeout() -> float:
    raw = os.getenv("DCJPERM_ORACLE_TIMEOUT")
    if raw is None or not raw.strip():
        return ORACLE_TIMEOUT_SECONDS
    try:
        return float(raw)
    except ValueError:
        logger.warning(f"⚠️ Ignoring DCJPERM_ORACLE_TIMEOUT={raw!r}, using {ORACLE_TIMEOUT_SECONDS}")
        return ORACLE_TIMEOUT_SECONDS


def get_log_level() -> str:
    return os.getenv("LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()
