"""
Runtime settings read from the environment (and a .env file when present).

None of the variables is required; CLI flags override every value here.
"""

import logging
import os
from functools import lru_cache
from typing import Optional

import dotenv
from pydantic import BaseModel, Field

dotenv.load_dotenv()

logger = logging.getLogger(__name__)


def _env_flag(name: str, default: str = "false") -> bool:
    return os.getenv(name, default).strip().lower() == "true"


class Settings(BaseModel):
    """Process-wide settings; one instance per process via `get_settings`."""

    jobs: int = Field(1, ge=1, description="Worker processes for suite and period runs")
    pass_floor: float = Field(0.96, ge=0.0, le=1.0, description="Minimum average passing rate for `nist` exit 0")
    metrics_file: Optional[str] = Field(None, description="JSON file for persisted counters")
    log_level: str = Field("INFO", description="Root log level for the CLI")
    enable_cloud_logging: bool = False
    project_id: Optional[str] = None

    @classmethod
    def from_env(cls) -> "Settings":
        """
        Build settings from PRNG_* variables plus the Cloud Logging pair.

        Returns:
            Settings with defaults for every unset variable

        Raises:
            ValueError: a numeric variable does not parse, or pydantic
                rejects its range (PRNG_JOBS < 1, PRNG_PASS_FLOOR outside [0, 1])
        """
        return cls(
            jobs=int(os.getenv("PRNG_JOBS", "1")),
            pass_floor=float(os.getenv("PRNG_PASS_FLOOR", "0.96")),
            metrics_file=os.getenv("PRNG_METRICS_FILE") or None,
            log_level=os.getenv("PRNG_LOG_LEVEL", "INFO").upper(),
            enable_cloud_logging=_env_flag("ENABLE_CLOUD_LOGGING"),
            project_id=os.getenv("PROJECT_ID") or None,
        )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Settings.from_env(), built once per process."""
    return Settings.from_env()
