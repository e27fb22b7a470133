"""Linear complexity test and a binary Berlekamp-Massey."""

import math

import numpy as np

from .common import BitsLike, as_bits, chi_square, igamc, require_length
from .models import DEFAULT_ALPHA, TestResult

BLOCK_SIZE = 500
MIN_BLOCKS = 200
CLASSES = 6
CLASS_PROBABILITIES = [0.010417, 0.03125, 0.125, 0.5, 0.25, 0.0625, 0.020833]
_CLASS_EDGES = [-2.5, -1.5, -0.5, 0.5, 1.5, 2.5]


def bits_to_int(bits: np.ndarray) -> int:
    """Pack s_0, s_1, ... into sum(s_i * 2**i)."""
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def berlekamp_massey(bits: BitsLike) -> int:
    """Length of the shortest LFSR generating the sequence.

    s*B and s*C are tracked as shifted integers, so each step is a handful of
    big-integer operations instead of a loop over the connection polynomial.
    """
    x = as_bits(bits)
    s = bits_to_int(x)
    sb, sc = s, s
    degree = 0
    m = 0
    for n in range(x.size):
        discrepancy = sc & (1 << m)
        m += 1
        if discrepancy:
            sc >>= m
            m = 0
            if 2 * degree <= n:
                sb, sc = sc, sb
                degree = n + 1 - degree
            sc ^= sb
    return degree


def expected_complexity(block_size: int) -> float:
    """Mean linear complexity of a random block of `block_size` bits."""
    M = block_size
    return M / 2.0 + (9.0 + (-1) ** (M + 1)) / 36.0 - (M / 3.0 + 2.0 / 9.0) / 2.0 ** M


def linear_complexity_test(
    bits: BitsLike, block_size: int = BLOCK_SIZE, *, enforce_minimum: bool = True, alpha: float = DEFAULT_ALPHA
) -> TestResult:
    """
    Berlekamp-Massey complexity of each block, binned into seven classes.

    Args:
        bits: Sequence under test
        block_size: Block length M (default 500)
        enforce_minimum: Require at least 200 blocks
        alpha: Significance level recorded on the result

    Returns:
        TestResult with one p-value and the class chi-square
    """
    x = as_bits(bits)
    n = x.size
    require_length("linear_complexity", n, MIN_BLOCKS * block_size, enforce_minimum)
    blocks = n // block_size
    if blocks < 1:
        require_length("linear_complexity", n, block_size, True)
    mu = expected_complexity(block_size)
    sign = (-1) ** block_size
    complexities = np.array(
        [berlekamp_massey(x[i * block_size:(i + 1) * block_size]) for i in range(blocks)], dtype=np.float64
    )
    t = sign * (complexities - mu) + 2.0 / 9.0
    counts = np.bincount(np.searchsorted(_CLASS_EDGES, t, side="left"), minlength=CLASSES + 1)
    chi2 = chi_square(counts, blocks * np.asarray(CLASS_PROBABILITIES))
    p = igamc(CLASSES / 2.0, chi2 / 2.0)
    return TestResult(
        "linear_complexity", ["linear_complexity"], [p],
        parameters={"block_size": block_size}, statistics={"chi2": chi2}, alpha=alpha,
    )
