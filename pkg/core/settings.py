#!/usr/bin/env python3
"""
Runtime settings read from the environment.

A local .env file is honoured when python-dotenv is installed; otherwise the
process environment is used as is.
"""

import os
import logging
from dataclasses import dataclass

try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    # Fall back to plain environment variables
    pass

logger = logging.getLogger(__name__)


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={raw!r}, using {default}")
        return default


@dataclass(frozen=True)
class Settings:
    """Limits and precision knobs for searches and numerics"""
    ball_cap: int = 12
    period_window: int = 3
    period_search_bound: int = 20000
    dps: int = 50
    logscale_band_digits: int = 50
    tower_cap: int = 3
    log_level: str = "WARNING"
    results_db: str = "hallgroups_results.db"

    @classmethod
    def from_env(cls) -> "Settings":
        return cls(
            ball_cap=_int_env("HALLGROUPS_BALL_CAP", 12),
            period_window=_int_env("HALLGROUPS_PERIOD_WINDOW", 3),
            period_search_bound=_int_env("HALLGROUPS_PERIOD_BOUND", 20000),
            dps=_int_env("HALLGROUPS_DPS", 50),
            logscale_band_digits=_int_env("HALLGROUPS_LOGSCALE_BAND_DIGITS", 50),
            tower_cap=_int_env("HALLGROUPS_TOWER_CAP", 3),
            log_level=os.getenv("HALLGROUPS_LOG_LEVEL", "WARNING").upper(),
            results_db=os.getenv("HALLGROUPS_DB", "hallgroups_results.db"),
        )


_settings = None


def get_settings() -> Settings:
    """Process-wide settings, loaded once"""
    global _settings
    if _settings is None:
        _settings = Settings.from_env()
    return _settings
