"""
Frequency-style tests: monobit, block frequency, cumulative sums, runs and
longest run of ones in a block.
"""

import math
from typing import List, Tuple

import numpy as np
from scipy.special import erfc, ndtr

from .common import BitsLike, as_bits, chi_square, clip_p, igamc, require_length
from .models import DEFAULT_ALPHA, TestResult

MIN_LENGTH = 100
MIN_LONGEST_RUN_LENGTH = 128

# (minimum n, block size M, lowest class, highest class, class probabilities)
_LONGEST_RUN_TABLE: List[Tuple[int, int, int, int, List[float]]] = [
    (750000, 10000, 10, 16, [0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727]),
    (6272, 128, 4, 9, [0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124]),
    (128, 8, 1, 4, [0.2148, 0.3672, 0.2305, 0.1875]),
]


def frequency_test(bits: BitsLike, *, enforce_minimum: bool = True, alpha: float = DEFAULT_ALPHA) -> TestResult:
    """
    Monobit test: is the proportion of ones close to 1/2?

    Args:
        bits: Sequence under test (BitStream, array or "0101" string)
        enforce_minimum: Reject sequences shorter than 100 bits
        alpha: Significance level recorded on the result

    Returns:
        TestResult with one p-value and s_obs in its statistics

    Raises:
        InsufficientDataError: the sequence is below the length minimum
    """
    x = as_bits(bits)
    n = x.size
    require_length("frequency", n, MIN_LENGTH, enforce_minimum)
    s = 2 * int(x.sum()) - n
    s_obs = abs(s) / math.sqrt(n)
    p = clip_p(erfc(s_obs / math.sqrt(2)))
    return TestResult("frequency", ["frequency"], [p], statistics={"s_obs": s_obs}, alpha=alpha)


def block_frequency_test(
    bits: BitsLike, block_size: int = 128, *, enforce_minimum: bool = True, alpha: float = DEFAULT_ALPHA
) -> TestResult:
    """Chi-square of the ones proportion over non-overlapping blocks of `block_size` bits."""
    x = as_bits(bits)
    n = x.size
    require_length("block_frequency", n, MIN_LENGTH, enforce_minimum)
    blocks = n // block_size
    if blocks < 1:
        require_length("block_frequency", n, block_size, True)
    pi = x[: blocks * block_size].reshape(blocks, block_size).sum(axis=1) / block_size
    chi2 = 4.0 * block_size * float(np.sum((pi - 0.5) ** 2))
    p = igamc(blocks / 2.0, chi2 / 2.0)
    return TestResult(
        "block_frequency", ["block_frequency"], [p],
        parameters={"block_size": block_size}, statistics={"chi2": chi2}, alpha=alpha,
    )


def _trunc_div(a: int, b: int) -> int:
    """Integer division rounding toward zero."""
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b > 0) else -q


def _cusum_p(n: int, z: int) -> float:
    root = math.sqrt(n)
    k = np.arange(_trunc_div(_trunc_div(-n, z) + 1, 4), _trunc_div(_trunc_div(n, z) - 1, 4) + 1)
    sum1 = float(np.sum(ndtr((4 * k + 1) * z / root) - ndtr((4 * k - 1) * z / root)))
    k = np.arange(_trunc_div(_trunc_div(-n, z) - 3, 4), _trunc_div(_trunc_div(n, z) - 1, 4) + 1)
    sum2 = float(np.sum(ndtr((4 * k + 3) * z / root) - ndtr((4 * k + 1) * z / root)))
    return clip_p(1.0 - sum1 + sum2)


def cumulative_sums_test(
    bits: BitsLike, *, enforce_minimum: bool = True, alpha: float = DEFAULT_ALPHA
) -> TestResult:
    """Forward and backward maximal excursion of the ±1 random walk."""
    x = as_bits(bits)
    n = x.size
    require_length("cumulative_sums", n, MIN_LENGTH, enforce_minimum)
    walk = 2 * x.astype(np.int64) - 1
    z_forward = int(np.max(np.abs(np.cumsum(walk))))
    z_backward = int(np.max(np.abs(np.cumsum(walk[::-1]))))
    return TestResult(
        "cumulative_sums",
        ["cumulative_sums/forward", "cumulative_sums/backward"],
        [_cusum_p(n, z_forward), _cusum_p(n, z_backward)],
        statistics={"z_forward": z_forward, "z_backward": z_backward},
        alpha=alpha,
    )


def runs_test(bits: BitsLike, *, enforce_minimum: bool = True, alpha: float = DEFAULT_ALPHA) -> TestResult:
    """
    Total number of runs against its expectation.

    A sequence failing the frequency prerequisite comes back inapplicable
    with p = 0, which the suite counts as a failure.
    """
    x = as_bits(bits)
    n = x.size
    require_length("runs", n, MIN_LENGTH, enforce_minimum)
    pi = float(x.sum()) / n
    tau = 2.0 / math.sqrt(n)
    if abs(pi - 0.5) >= tau:
        # frequency prerequisite failed: recorded as p = 0
        return TestResult(
            "runs", ["runs"], [0.0], applicable=False,
            reason=f"ones proportion {pi:.6f} fails the frequency prerequisite",
            statistics={"pi": pi}, alpha=alpha,
        )
    v_obs = 1 + int(np.count_nonzero(x[1:] != x[:-1]))
    num = abs(v_obs - 2.0 * n * pi * (1.0 - pi))
    den = 2.0 * math.sqrt(2.0 * n) * pi * (1.0 - pi)
    p = clip_p(erfc(num / den))
    return TestResult("runs", ["runs"], [p], statistics={"pi": pi, "v_obs": v_obs}, alpha=alpha)


def longest_runs_per_block(blocks: np.ndarray) -> np.ndarray:
    """Longest run of ones in every row of a 2-D bit array."""
    rows, width = blocks.shape
    padded = np.zeros((rows, width + 1), dtype=np.uint8)
    padded[:, :width] = blocks
    flat = padded.ravel()
    zeros = np.flatnonzero(flat == 0)
    starts = np.concatenate(([-1], zeros[:-1]))
    lengths = zeros - starts - 1
    longest = np.zeros(rows, dtype=np.int64)
    np.maximum.at(longest, zeros // (width + 1), lengths)
    return longest


def longest_run_test(bits: BitsLike, *, enforce_minimum: bool = True, alpha: float = DEFAULT_ALPHA) -> TestResult:
    """Longest run of ones per block; the block size (8, 128 or 10^4) follows n."""
    x = as_bits(bits)
    n = x.size
    require_length("longest_run", n, MIN_LONGEST_RUN_LENGTH, True)
    for minimum, block_size, low, high, pi in _LONGEST_RUN_TABLE:
        if n >= minimum:
            break
    blocks = n // block_size
    longest = longest_runs_per_block(x[: blocks * block_size].reshape(blocks, block_size))
    counts = np.bincount(np.clip(longest, low, high) - low, minlength=high - low + 1)
    expected = blocks * np.asarray(pi)
    chi2 = chi_square(counts, expected)
    p = igamc((len(pi) - 1) / 2.0, chi2 / 2.0)
    return TestResult(
        "longest_run", ["longest_run"], [p],
        parameters={"block_size": block_size}, statistics={"chi2": chi2}, alpha=alpha,
    )
