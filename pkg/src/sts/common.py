"""Helpers shared by the statistical tests."""

from typing import Union

import numpy as np
from scipy.special import gammaincc

from ..bitio import BitStream
from ..errors import InsufficientDataError

BitsLike = Union[BitStream, np.ndarray, str]


def as_bits(bits: BitsLike) -> np.ndarray:
    """Bits as a uint8 array; strings go through BitStream.from_string."""
    if isinstance(bits, BitStream):
        return bits.bits
    if isinstance(bits, str):
        return BitStream.from_string(bits).bits
    return np.asarray(bits, dtype=np.uint8)


def require_length(test_id: str, n: int, minimum: int, enforce: bool) -> None:
    """Raise InsufficientDataError below `minimum`; an empty sequence is always rejected."""
    if n < 1 or (enforce and n < minimum):
        raise InsufficientDataError(test_id, n, minimum if enforce else 1)


def clip_p(p: float) -> float:
    return float(min(max(p, 0.0), 1.0))


def igamc(a: float, x: float) -> float:
    """Regularised upper incomplete gamma Q(a, x)."""
    return clip_p(gammaincc(a, x))


def window_codes(x: np.ndarray, m: int, wrap: bool = False) -> np.ndarray:
    """Integer value of every m-bit window, first bit most significant.

    With wrap=True the sequence is extended by its first m-1 bits, giving one
    window per position.
    """
    n = x.size
    if wrap:
        x = np.concatenate([x, x[:m - 1]])
        count = n
    else:
        count = n - m + 1
    codes = np.zeros(max(count, 0), dtype=np.int64)
    for j in range(m):
        codes = (codes << 1) | x[j:j + count]
    return codes


def chi_square(observed: np.ndarray, expected: np.ndarray) -> float:
    """Pearson statistic sum((O - E)^2 / E)."""
    observed = np.asarray(observed, dtype=np.float64)
    expected = np.asarray(expected, dtype=np.float64)
    return float(np.sum((observed - expected) ** 2 / expected))
