"""Maurer's universal statistical test."""

import math
from typing import Optional, Tuple

import numpy as np
from scipy.special import erfc

from .common import BitsLike, as_bits, clip_p, require_length
from .models import DEFAULT_ALPHA, TestResult

MIN_LENGTH = 387840

# smallest n for L = 6, 7, ..., 16
_L_THRESHOLDS = [
    387840, 904960, 2068480, 4654080, 10342400, 22753280,
    49643520, 107560960, 231669760, 496435200, 1059061760,
]

EXPECTED_VALUE = {
    1: 0.7326495, 2: 1.5374383, 3: 2.4016068, 4: 3.3112247, 5: 4.2534266,
    6: 5.2177052, 7: 6.1962507, 8: 7.1836656, 9: 8.1764248, 10: 9.1723243,
    11: 10.170032, 12: 11.168765, 13: 12.168070, 14: 13.167693, 15: 14.167488,
    16: 15.167379,
}
VARIANCE = {
    1: 0.690, 2: 1.338, 3: 1.901, 4: 2.358, 5: 2.705,
    6: 2.954, 7: 3.125, 8: 3.238, 9: 3.311, 10: 3.356,
    11: 3.384, 12: 3.401, 13: 3.410, 14: 3.416, 15: 3.419, 16: 3.421,
}


def universal_parameters(n: int) -> Tuple[int, int]:
    """Block length L and initialisation block count Q for a sequence length."""
    block_length = 5
    for i, threshold in enumerate(_L_THRESHOLDS):
        if n >= threshold:
            block_length = 6 + i
    return block_length, 10 * (1 << block_length)


def universal_test(
    bits: BitsLike,
    block_length: Optional[int] = None,
    init_blocks: Optional[int] = None,
    *,
    variance_correction: bool = True,
    enforce_minimum: bool = True,
    alpha: float = DEFAULT_ALPHA,
) -> TestResult:
    """Compressibility of the sequence measured by distances between repeated L-bit blocks.

    With variance_correction=False the standard deviation is the plain
    sqrt(variance), which is how the small worked example is computed.
    """
    x = as_bits(bits)
    n = x.size
    require_length("universal", n, MIN_LENGTH, enforce_minimum)
    default_l, default_q = universal_parameters(n)
    L = block_length or default_l
    Q = init_blocks or default_q
    if L not in EXPECTED_VALUE:
        raise ValueError(f"block length must be between 1 and 16, got {L}")
    K = n // L - Q
    if K < 1:
        require_length("universal", n, (Q + 1) * L, True)

    total = Q + K
    weights = np.left_shift(np.int64(1), np.arange(L - 1, -1, -1, dtype=np.int64))
    values = x[: total * L].reshape(total, L).astype(np.int64) @ weights
    index = np.arange(1, total + 1, dtype=np.int64)

    # index of the previous block with the same value (0 when none)
    order = np.lexsort((index, values))
    sorted_values = values[order]
    sorted_index = index[order]
    prev_sorted = np.zeros(total, dtype=np.int64)
    same = sorted_values[1:] == sorted_values[:-1]
    prev_sorted[1:][same] = sorted_index[:-1][same]
    previous = np.empty(total, dtype=np.int64)
    previous[order] = prev_sorted

    fn = float(np.sum(np.log2(index[Q:] - previous[Q:]))) / K
    if variance_correction:
        c = 0.7 - 0.8 / L + (4.0 + 32.0 / L) * K ** (-3.0 / L) / 15.0
        sigma = c * math.sqrt(VARIANCE[L] / K)
    else:
        sigma = math.sqrt(VARIANCE[L])
    p = clip_p(erfc(abs(fn - EXPECTED_VALUE[L]) / (math.sqrt(2.0) * sigma)))
    return TestResult(
        "universal", ["universal"], [p],
        parameters={"L": L, "Q": Q, "K": K}, statistics={"fn": fn}, alpha=alpha,
    )
