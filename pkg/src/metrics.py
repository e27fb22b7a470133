"""
Metrics and counters for generation and statistical testing runs.

Tracks:
- sequences_generated: bit sequences produced by a generator
- sequences_tested: sequences evaluated by the statistical suite
- inapplicable_results: per-sequence test results marked inapplicable
- zero_absorptions: generator runs whose state fell into the zero fixed point
- suites_completed: finished suite runs
"""

import json
import logging
from pathlib import Path
from threading import Lock
from typing import Dict, Optional

logger = logging.getLogger(__name__)

COUNTER_NAMES = (
    "sequences_generated",
    "sequences_tested",
    "inapplicable_results",
    "zero_absorptions",
    "suites_completed",
)

# Thread-safe counters
_counters_lock = Lock()
_counters: Dict[str, int] = {name: 0 for name in COUNTER_NAMES}


class MetricsCollector:
    """Collects counters, optionally persisted to a JSON file."""

    def __init__(self, metrics_file: Optional[str] = None):
        self.metrics_file = metrics_file
        self._load_metrics()

    def _load_metrics(self) -> None:
        if not self.metrics_file:
            return
        metrics_path = Path(self.metrics_file)
        if metrics_path.exists():
            try:
                loaded = json.loads(metrics_path.read_text())
                with _counters_lock:
                    _counters.update({k: int(v) for k, v in loaded.items() if k in _counters})
                logger.info(f"Loaded metrics from {metrics_path}")
            except (OSError, ValueError) as e:
                logger.warning(f"Failed to load metrics from {metrics_path}: {e}")

    def _save_metrics(self) -> None:
        if not self.metrics_file:
            return
        metrics_path = Path(self.metrics_file)
        try:
            metrics_path.parent.mkdir(parents=True, exist_ok=True)
            with _counters_lock:
                snapshot = dict(_counters)
            metrics_path.write_text(json.dumps(snapshot, indent=2))
        except OSError as e:
            logger.warning(f"Failed to save metrics to {metrics_path}: {e}")

    def increment(self, name: str, amount: int = 1) -> int:
        """
        Add to one counter and persist the snapshot.

        Args:
            name: One of COUNTER_NAMES
            amount: Value to add

        Returns:
            The counter total after the increment

        Raises:
            KeyError: `name` is not a known counter
        """
        if name not in _counters:
            raise KeyError(f"unknown counter {name!r}")
        with _counters_lock:
            _counters[name] += amount
            total = _counters[name]
        self._save_metrics()
        return total

    def increment_sequences_generated(self, count: int = 1) -> None:
        total = self.increment("sequences_generated", count)
        logger.debug(f"📊 Sequences generated (total: {total})")

    def increment_sequences_tested(self, count: int = 1) -> None:
        self.increment("sequences_tested", count)

    def increment_inapplicable(self, count: int = 1) -> None:
        if count:
            self.increment("inapplicable_results", count)

    def increment_zero_absorption(self, generator: Optional[str] = None) -> None:
        total = self.increment("zero_absorptions")
        logger.warning(f"⚠️  Zero absorption (total: {total})" + (f" in {generator}" if generator else ""))

    def increment_suite_completed(self) -> None:
        total = self.increment("suites_completed")
        logger.info(f"📊 Suite completed (total: {total})")

    def get_metrics(self) -> Dict[str, int]:
        """Snapshot of every counter."""
        with _counters_lock:
            return _counters.copy()

    def reset_metrics(self) -> None:
        """Reset all counters (for testing)."""
        with _counters_lock:
            for name in _counters:
                _counters[name] = 0
        self._save_metrics()


_metrics_collector: Optional[MetricsCollector] = None


def get_metrics_collector() -> MetricsCollector:
    """Get or create the global collector, persisted to PRNG_METRICS_FILE when set."""
    global _metrics_collector
    if _metrics_collector is None:
        from .config import get_settings

        _metrics_collector = MetricsCollector(get_settings().metrics_file)
    return _metrics_collector


def get_metrics() -> Dict[str, int]:
    """Counters of the global collector."""
    return get_metrics_collector().get_metrics()
