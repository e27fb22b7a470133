"""Binary matrix rank test over GF(2)."""

import math
from typing import Iterable

import numpy as np

from .common import BitsLike, as_bits, clip_p, require_length
from .models import DEFAULT_ALPHA, TestResult

MATRIX_ROWS = 32
MATRIX_COLS = 32
MIN_MATRICES = 38


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank of a GF(2) matrix given as row bitmasks."""
    basis = []  # descending, distinct leading bits
    for row in rows:
        for b in basis:
            row = min(row, row ^ b)
        if row:
            basis.append(row)
            basis.sort(reverse=True)
    return len(basis)


def rank_probability(r: int, m: int = MATRIX_ROWS, q: int = MATRIX_COLS) -> float:
    """Probability that a random m x q GF(2) matrix has rank r."""
    if r == 0:
        return 2.0 ** (-m * q)
    product = 1.0
    for i in range(r):
        product *= (1.0 - 2.0 ** (i - q)) * (1.0 - 2.0 ** (i - m)) / (1.0 - 2.0 ** (i - r))
    return 2.0 ** (r * (q + m - r) - m * q) * product


def binary_matrix_rank_test(
    bits: BitsLike,
    rows: int = MATRIX_ROWS,
    cols: int = MATRIX_COLS,
    *,
    enforce_minimum: bool = True,
    alpha: float = DEFAULT_ALPHA,
) -> TestResult:
    """Rank distribution of disjoint rows x cols matrices.

    Class probabilities always come from the 32 x 32 case, as the reference
    suite computes them regardless of the matrix shape.
    """
    x = as_bits(bits)
    n = x.size
    size = rows * cols
    require_length("rank", n, MIN_MATRICES * size, enforce_minimum)
    count = n // size
    if count < 1:
        require_length("rank", n, size, True)
    weights = np.left_shift(np.int64(1), np.arange(cols - 1, -1, -1, dtype=np.int64))
    matrices = x[: count * size].reshape(count, rows, cols).astype(np.int64) @ weights
    ranks = np.fromiter((gf2_rank(int(v) for v in mat) for mat in matrices), dtype=np.int64, count=count)

    full = rows  # the reference suite compares against M and M-1
    f_full = int(np.count_nonzero(ranks == full))
    f_minus = int(np.count_nonzero(ranks == full - 1))
    f_rest = count - f_full - f_minus

    p_full = rank_probability(MATRIX_ROWS)
    p_minus = rank_probability(MATRIX_ROWS - 1)
    p_rest = 1.0 - (p_full + p_minus)
    chi2 = (
        (f_full - p_full * count) ** 2 / (p_full * count)
        + (f_minus - p_minus * count) ** 2 / (p_minus * count)
        + (f_rest - p_rest * count) ** 2 / (p_rest * count)
    )
    p = clip_p(math.exp(-chi2 / 2.0))
    return TestResult(
        "rank", ["rank"], [p],
        parameters={"rows": rows, "cols": cols},
        statistics={"chi2": chi2, "full_rank": f_full, "full_rank_minus_one": f_minus},
        alpha=alpha,
    )
