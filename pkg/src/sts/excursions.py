"""
Random excursions and random excursions variant tests.

Both split the ±1 random walk into cycles between returns to zero. A
sequence with too few cycles is inapplicable and drops out of the
proportion denominator.
"""

import math
from typing import List, Tuple

import numpy as np
from scipy.special import erfc

from .common import BitsLike, as_bits, chi_square, clip_p, igamc, require_length
from .models import DEFAULT_ALPHA, TestResult

EXCURSION_STATES = [-4, -3, -2, -1, 1, 2, 3, 4]
VARIANT_STATES = [x for x in range(-9, 10) if x != 0]
MIN_CYCLES = 500


def excursion_subtest_ids() -> List[str]:
    return [f"random_excursions/{x:+d}" for x in EXCURSION_STATES]


def variant_subtest_ids() -> List[str]:
    return [f"random_excursions_variant/{x:+d}" for x in VARIANT_STATES]


def _walk(x: np.ndarray) -> Tuple[np.ndarray, int]:
    walk = np.cumsum(2 * x.astype(np.int64) - 1)
    cycles = int(np.count_nonzero(walk == 0)) + (1 if walk[-1] != 0 else 0)
    return walk, cycles


def _cycle_gate(test_id: str, n: int, cycles: int, enforce: bool) -> str:
    """Reason string when the sequence has too few cycles, else empty."""
    floor = max(0.005 * math.sqrt(n), MIN_CYCLES) if enforce else 1
    if cycles < floor:
        return f"{cycles} cycles, {test_id} needs at least {math.ceil(floor)}"
    return ""


def state_probabilities(state: int) -> List[float]:
    """Probability that a cycle visits the state exactly k times, k = 0..4, and >= 5."""
    a = abs(state)
    q = 1.0 - 1.0 / (2.0 * a)
    pi = [q]
    pi.extend(1.0 / (4.0 * a * a) * q ** (k - 1) for k in range(1, 5))
    pi.append(1.0 / (2.0 * a) * q ** 4)
    return pi


def random_excursions_test(
    bits: BitsLike, states: List[int] = EXCURSION_STATES, *, enforce_minimum: bool = True,
    alpha: float = DEFAULT_ALPHA,
) -> TestResult:
    """
    Visit-count distribution of each state per cycle of the random walk.

    Args:
        bits: Sequence under test
        states: Walk states to test, one sub-test each (default -4..-1, 1..4)
        enforce_minimum: Apply the max(0.005 * sqrt(n), 500) cycle gate;
            otherwise a single cycle suffices
        alpha: Significance level recorded on the result

    Returns:
        TestResult with one p-value per state, or an inapplicable result
        carrying the cycle count when the gate fails
    """
    x = as_bits(bits)
    require_length("random_excursions", x.size, 1, False)
    walk, cycles = _walk(x)
    ids = [f"random_excursions/{s:+d}" for s in states]
    reason = _cycle_gate("random_excursions", x.size, cycles, enforce_minimum)
    if reason:
        return TestResult("random_excursions", ids, applicable=False, reason=reason,
                          statistics={"cycles": cycles}, alpha=alpha)

    is_zero = (walk == 0).astype(np.int64)
    cycle_of = np.concatenate(([0], np.cumsum(is_zero)[:-1]))
    p_values = []
    for state in states:
        visits = np.bincount(cycle_of[walk == state], minlength=cycles)
        counts = np.bincount(np.minimum(visits, 5), minlength=6)
        chi2 = chi_square(counts, cycles * np.asarray(state_probabilities(state)))
        p_values.append(igamc(2.5, chi2 / 2.0))
    return TestResult("random_excursions", ids, p_values,
                      statistics={"cycles": cycles}, alpha=alpha)


def random_excursions_variant_test(
    bits: BitsLike, states: List[int] = VARIANT_STATES, *, enforce_minimum: bool = True,
    alpha: float = DEFAULT_ALPHA,
) -> TestResult:
    """Total visits to each of the states -9..9 (excluding 0) against the cycle count."""
    x = as_bits(bits)
    require_length("random_excursions_variant", x.size, 1, False)
    walk, cycles = _walk(x)
    ids = [f"random_excursions_variant/{s:+d}" for s in states]
    reason = _cycle_gate("random_excursions_variant", x.size, cycles, enforce_minimum)
    if reason:
        return TestResult("random_excursions_variant", ids, applicable=False, reason=reason,
                          statistics={"cycles": cycles}, alpha=alpha)
    p_values = []
    for state in states:
        xi = int(np.count_nonzero(walk == state))
        p_values.append(clip_p(erfc(abs(xi - cycles) / math.sqrt(2.0 * cycles * (4.0 * abs(state) - 2.0)))))
    return TestResult("random_excursions_variant", ids, p_values,
                      statistics={"cycles": cycles}, alpha=alpha)
