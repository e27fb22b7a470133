"""Approximate entropy and serial tests over wrapped m-bit patterns."""

import math

import numpy as np

from .common import BitsLike, as_bits, igamc, require_length, window_codes
from .models import DEFAULT_ALPHA, TestResult

APPROXIMATE_ENTROPY_M = 10
SERIAL_M = 16


def _pattern_counts(x: np.ndarray, m: int) -> np.ndarray:
    return np.bincount(window_codes(x, m, wrap=True), minlength=1 << m)


def _phi(x: np.ndarray, m: int) -> float:
    if m == 0:
        return 0.0
    c = _pattern_counts(x, m) / x.size
    c = c[c > 0]
    return float(np.sum(c * np.log(c)))


def approximate_entropy_test(
    bits: BitsLike, m: int = APPROXIMATE_ENTROPY_M, *, enforce_minimum: bool = True, alpha: float = DEFAULT_ALPHA
) -> TestResult:
    """Requires m < floor(log2 n) - 5 when the minimum is enforced."""
    x = as_bits(bits)
    n = x.size
    require_length("approximate_entropy", n, 1 << (m + 6), enforce_minimum)
    apen = _phi(x, m) - _phi(x, m + 1)
    chi2 = 2.0 * n * (math.log(2.0) - apen)
    p = igamc(2.0 ** (m - 1), chi2 / 2.0)
    return TestResult(
        "approximate_entropy", ["approximate_entropy"], [p],
        parameters={"m": m}, statistics={"apen": apen, "chi2": chi2}, alpha=alpha,
    )


def _psi_squared(x: np.ndarray, m: int) -> float:
    if m <= 0:
        return 0.0
    counts = _pattern_counts(x, m).astype(np.float64)
    return float((2.0 ** m / x.size) * np.sum(counts ** 2) - x.size)


def serial_test(
    bits: BitsLike, m: int = SERIAL_M, *, enforce_minimum: bool = True, alpha: float = DEFAULT_ALPHA
) -> TestResult:
    """Two p-values from the first and second differences of psi-squared."""
    x = as_bits(bits)
    n = x.size
    require_length("serial", n, 1 << (m + 3), enforce_minimum)
    psi_m, psi_m1, psi_m2 = (_psi_squared(x, m - i) for i in range(3))
    delta1 = psi_m - psi_m1
    delta2 = psi_m - 2.0 * psi_m1 + psi_m2
    p1 = igamc(2.0 ** (m - 2), delta1 / 2.0)
    p2 = igamc(2.0 ** (m - 3), delta2 / 2.0)
    return TestResult(
        "serial", ["serial/1", "serial/2"], [p1, p2],
        parameters={"m": m}, statistics={"delta1": delta1, "delta2": delta2}, alpha=alpha,
    )
