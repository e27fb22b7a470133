"""
Self-contained SP 800-22 statistical test suite.
"""

from .common import window_codes
from .entropy import approximate_entropy_test, serial_test
from .excursions import random_excursions_test, random_excursions_variant_test
from .fourier import bluestein_fft, dft
from .frequency import (
    block_frequency_test,
    cumulative_sums_test,
    frequency_test,
    longest_run_test,
    runs_test,
)
from .linear_complexity import berlekamp_massey, linear_complexity_test
from .models import DEFAULT_ALPHA, FamilySummary, SubtestSummary, SuiteReport, TestResult
from .rank import binary_matrix_rank_test, gf2_rank
from .registry import FAMILIES, REGISTRY, get_family, run_test, total_subtests
from .spectral import spectral_test
from .suite import p_value_uniformity, proportion_threshold, run_suite, run_suite_on_streams
from .templates import (
    aperiodic_templates,
    load_templates,
    non_overlapping_template_test,
    overlapping_template_test,
)
from .universal import universal_test

__all__ = [
    "window_codes",
    "approximate_entropy_test",
    "serial_test",
    "random_excursions_test",
    "random_excursions_variant_test",
    "bluestein_fft",
    "dft",
    "block_frequency_test",
    "cumulative_sums_test",
    "frequency_test",
    "longest_run_test",
    "runs_test",
    "berlekamp_massey",
    "linear_complexity_test",
    "DEFAULT_ALPHA",
    "FamilySummary",
    "SubtestSummary",
    "SuiteReport",
    "TestResult",
    "binary_matrix_rank_test",
    "gf2_rank",
    "FAMILIES",
    "REGISTRY",
    "get_family",
    "run_test",
    "total_subtests",
    "spectral_test",
    "p_value_uniformity",
    "proportion_threshold",
    "run_suite",
    "run_suite_on_streams",
    "aperiodic_templates",
    "load_templates",
    "non_overlapping_template_test",
    "overlapping_template_test",
    "universal_test",
]
