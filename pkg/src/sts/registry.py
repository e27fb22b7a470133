"""
Registry of the statistical test families and their default parameters.

`run_test` is the single entry point the suite uses: it merges defaults,
dispatches, and turns an InsufficientDataError into an inapplicable result.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

from ..errors import InsufficientDataError
from .common import BitsLike
from .entropy import APPROXIMATE_ENTROPY_M, SERIAL_M, approximate_entropy_test, serial_test
from .excursions import (
    excursion_subtest_ids,
    random_excursions_test,
    random_excursions_variant_test,
    variant_subtest_ids,
)
from .frequency import (
    block_frequency_test,
    cumulative_sums_test,
    frequency_test,
    longest_run_test,
    runs_test,
)
from .linear_complexity import BLOCK_SIZE, linear_complexity_test
from .models import DEFAULT_ALPHA, TestResult
from .rank import binary_matrix_rank_test
from .spectral import spectral_test
from .templates import (
    NON_OVERLAPPING_BLOCKS,
    NON_OVERLAPPING_M,
    OVERLAPPING_BLOCK,
    OVERLAPPING_K,
    OVERLAPPING_M,
    non_overlapping_subtest_ids,
    non_overlapping_template_test,
    overlapping_template_test,
)
from .universal import universal_test

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TestFamily:
    __test__ = False  # not a pytest class

    name: str
    title: str
    function: Callable[..., TestResult]
    defaults: Dict[str, Any] = field(default_factory=dict)
    subtests: Optional[Callable[[Dict[str, Any]], List[str]]] = None

    def subtest_ids(self, params: Optional[Dict[str, Any]] = None) -> List[str]:
        if self.subtests is None:
            return [self.name]
        return self.subtests({**self.defaults, **(params or {})})


FAMILIES: List[TestFamily] = [
    TestFamily("frequency", "Frequency (monobit)", frequency_test),
    TestFamily("block_frequency", "Frequency within a block", block_frequency_test, {"block_size": 128}),
    TestFamily(
        "cumulative_sums", "Cumulative sums", cumulative_sums_test,
        subtests=lambda _: ["cumulative_sums/forward", "cumulative_sums/backward"],
    ),
    TestFamily("runs", "Runs", runs_test),
    TestFamily("longest_run", "Longest run of ones in a block", longest_run_test),
    TestFamily("rank", "Binary matrix rank", binary_matrix_rank_test, {"rows": 32, "cols": 32}),
    TestFamily("fft", "Discrete Fourier transform (spectral)", spectral_test),
    TestFamily(
        "non_overlapping_template", "Non-overlapping template matching", non_overlapping_template_test,
        {"m": NON_OVERLAPPING_M, "blocks": NON_OVERLAPPING_BLOCKS},
        subtests=lambda p: non_overlapping_subtest_ids(p["m"]),
    ),
    TestFamily(
        "overlapping_template", "Overlapping template matching", overlapping_template_test,
        {"m": OVERLAPPING_M, "block_size": OVERLAPPING_BLOCK, "k": OVERLAPPING_K},
    ),
    TestFamily("universal", "Maurer's universal statistical", universal_test),
    TestFamily("approximate_entropy", "Approximate entropy", approximate_entropy_test, {"m": APPROXIMATE_ENTROPY_M}),
    TestFamily("serial", "Serial", serial_test, {"m": SERIAL_M}, subtests=lambda _: ["serial/1", "serial/2"]),
    TestFamily("linear_complexity", "Linear complexity", linear_complexity_test, {"block_size": BLOCK_SIZE}),
    TestFamily(
        "random_excursions", "Random excursions", random_excursions_test,
        subtests=lambda _: excursion_subtest_ids(),
    ),
    TestFamily(
        "random_excursions_variant", "Random excursions variant", random_excursions_variant_test,
        subtests=lambda _: variant_subtest_ids(),
    ),
]

REGISTRY: Dict[str, TestFamily] = {family.name: family for family in FAMILIES}


def get_family(name: str) -> TestFamily:
    try:
        return REGISTRY[name]
    except KeyError:
        raise ValueError(f"unknown test family {name!r}; choose from {', '.join(REGISTRY)}") from None


def run_test(
    name: str,
    bits: BitsLike,
    params: Optional[Dict[str, Any]] = None,
    alpha: float = DEFAULT_ALPHA,
) -> TestResult:
    """
    Run one family by name with its default parameters merged under `params`.

    Args:
        name: Family name from REGISTRY (e.g. "frequency", "serial")
        bits: Sequence under test
        params: Overrides of the family defaults (e.g. {"block_size": 1000})
        alpha: Significance level recorded on the result

    Returns:
        The family's TestResult; a sequence below a length minimum yields an
        inapplicable result carrying every sub-test id and the reason

    Raises:
        ValueError: unknown family name
    """
    family = get_family(name)
    merged = {**family.defaults, **(params or {})}
    try:
        return family.function(bits, alpha=alpha, **merged)
    except InsufficientDataError as e:
        logger.debug(f"{name} inapplicable: {e}")
        return TestResult(
            name, family.subtest_ids(merged), applicable=False, reason=str(e), parameters=merged, alpha=alpha,
        )


def total_subtests(families: Optional[List[str]] = None) -> int:
    """Sub-test count for the given families (188 for the full battery)."""
    names = families or list(REGISTRY)
    return sum(len(get_family(n).subtest_ids()) for n in names)
