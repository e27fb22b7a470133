# Shared fixtures; corpus-level tests are marked slow and only run with PRNG_RUN_SLOW=1

# region imports
import os

import pytest

from src.generators import REFERENCE_MASTER_SEED, derive_seed
from src.metrics import get_metrics_collector
# endregion


def pytest_collection_modifyitems(config, items):
    if os.getenv("PRNG_RUN_SLOW") == "1":
        return
    skip_slow = pytest.mark.skip(reason="set PRNG_RUN_SLOW=1 to run corpus-level tests")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


# region fixtures
@pytest.fixture
def reference_seed():
    """Seed of the reference dynamical configuration (n=32, m=8, k in [9, 11])."""
    return derive_seed(REFERENCE_MASTER_SEED)


@pytest.fixture
def metrics():
    collector = get_metrics_collector()
    collector.reset_metrics()
    yield collector
    collector.reset_metrics()
# endregion
