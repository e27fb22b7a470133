"""
Google Cloud Logging sink for run manifests and report summaries.

Disabled unless ENABLE_CLOUD_LOGGING=true and PROJECT_ID are set; any
missing library or init failure leaves the client disabled and every call
returns False instead of raising.
"""

import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional

from .config import Settings, get_settings
from .models import RunManifest

logger = logging.getLogger(__name__)

try:
    from google.cloud import logging as cloud_logging
    from google.oauth2 import service_account
    CLOUD_LOGGING_AVAILABLE = True
except ImportError:
    CLOUD_LOGGING_AVAILABLE = False


class RunLogClient:
    """Client for logging CLI runs to Google Cloud Logging."""

    def __init__(self, settings: Optional[Settings] = None, log_name: str = "prng_runs"):
        self.client: Optional[Any] = None
        self.logger: Optional[Any] = None
        self.enabled = False
        self.log_name = log_name
        self.settings = settings or get_settings()
        self.project_id: Optional[str] = None
        self._initialize()

    def _initialize(self) -> None:
        if not CLOUD_LOGGING_AVAILABLE:
            logger.debug("Cloud Logging not available (library not installed)")
            return
        if not self.settings.enable_cloud_logging:
            logger.debug("Cloud Logging disabled (ENABLE_CLOUD_LOGGING not set to 'true')")
            return
        self.project_id = self.settings.project_id
        if not self.project_id:
            logger.warning("PROJECT_ID not set. Cloud Logging disabled.")
            return

        try:
            credentials_path = Path(__file__).resolve().parents[1] / "config" / "gcp.json"
            if credentials_path.exists():
                credentials = service_account.Credentials.from_service_account_file(str(credentials_path))
                self.client = cloud_logging.Client(project=self.project_id, credentials=credentials)
            else:
                self.client = cloud_logging.Client(project=self.project_id)
            self.logger = self.client.logger(self.log_name)
            self.enabled = True
            logger.info(f"Cloud Logging enabled for project: {self.project_id}, log: {self.log_name}")
        except Exception as e:
            logger.error(f"Failed to initialize Cloud Logging: {e}")
            self.enabled = False
            self.client = None
            self.logger = None

    def build_entry(
        self, manifest: RunManifest, summary: Optional[Dict[str, Any]] = None, severity: str = "INFO"
    ) -> Dict[str, Any]:
        """
        Structured log entry for one run.

        Args:
            manifest: Manifest of the finished run
            summary: Optional result summary (e.g. averagePassingRate, exit code)
            severity: Log severity level (DEBUG, INFO, WARNING, ERROR, CRITICAL)

        Returns:
            Dict with severity, timestamp, labels and json_payload keys
        """
        summary = summary or {}
        labels = {
            "component": "prng_cli",
            "command": manifest.command,
            "generator": manifest.generator.name.value if manifest.generator else "files",
        }
        if "averagePassingRate" in summary:
            labels["average_passing_rate"] = f"{summary['averagePassingRate']:.4f}"
        return {
            "severity": severity,
            "timestamp": datetime.now().isoformat(),
            "labels": labels,
            "json_payload": {
                "manifest": manifest.model_dump(mode="json", by_alias=True),
                "summary": summary,
            },
        }

    def log_run(
        self, manifest: RunManifest, summary: Optional[Dict[str, Any]] = None, severity: str = "INFO"
    ) -> bool:
        """
        Send one run to Google Cloud Logging.

        Args:
            manifest: Manifest of the finished run
            summary: Optional result summary
            severity: Log severity level

        Returns:
            True if logged successfully, False when disabled or on failure
        """
        if not self.enabled or not self.logger:
            return False
        try:
            self.logger.log_struct(self.build_entry(manifest, summary, severity), severity=severity)
            logger.debug(f"Run logged to Cloud Logging: {manifest.command}")
            return True
        except Exception as e:
            logger.error(f"Failed to log run to Cloud Logging: {e}")
            return False


_run_log_client: Optional[RunLogClient] = None


def get_run_log_client() -> RunLogClient:
    global _run_log_client
    if _run_log_client is None:
        _run_log_client = RunLogClient()
    return _run_log_client


def log_run_to_cloud(manifest: RunManifest, summary: Optional[Dict[str, Any]] = None, severity: str = "INFO") -> bool:
    """Log a run through the shared client (convenience wrapper)."""
    return get_run_log_client().log_run(manifest, summary, severity)
