"""Discrete Fourier transform (spectral) test."""

import math

import numpy as np
from scipy.special import erfc

from .common import BitsLike, as_bits, clip_p, require_length
from .fourier import dft
from .models import DEFAULT_ALPHA, TestResult

MIN_LENGTH = 1000


def spectral_test(bits: BitsLike, *, enforce_minimum: bool = True, alpha: float = DEFAULT_ALPHA) -> TestResult:
    """
    Count of DFT moduli below the 95% peak threshold, over the first n/2 bins.

    The transform is Bluestein's for lengths that are not a power of two, so
    any n is accepted.
    """
    x = as_bits(bits)
    n = x.size
    require_length("fft", n, MIN_LENGTH, enforce_minimum)
    signal = 2.0 * x.astype(np.float64) - 1.0
    modulus = np.abs(dft(signal)[: n // 2])
    threshold = math.sqrt(math.log(1.0 / 0.05) * n)
    n0 = 0.95 * n / 2.0
    n1 = int(np.count_nonzero(modulus < threshold))
    d = (n1 - n0) / math.sqrt(n * 0.95 * 0.05 / 4.0)
    p = clip_p(erfc(abs(d) / math.sqrt(2.0)))
    return TestResult("fft", ["fft"], [p], statistics={"d": d, "n1": n1}, alpha=alpha)
