"""
Digitized logistic map x' = g * x * (1 - x) on the fixed-point datapath.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import FxRangeError
from .fxp import (
    MAX_WORD_LENGTH,
    MIN_WORD_LENGTH,
    FxWord,
    gamma_format,
    mul_gamma,
    mul_gamma_raw,
    mul_state,
    one_minus_wrap,
)

# Lower edge of the chaotic region, kept as an exact decimal.
CHAOTIC_LOWER = Fraction("3.57")

# Map-step contract: one deterministic iteration on raw state words.
StepFn = Callable[[int], int]


@dataclass(frozen=True)
class ChaoticRange:
    """Inclusive raw Gamma bounds of the chaotic region for one word length."""

    word_length: int
    g_min: int
    g_max: int

    def __contains__(self, raw: int) -> bool:
        return self.g_min <= raw <= self.g_max

    @property
    def size(self) -> int:
        return self.g_max - self.g_min + 1


def chaotic_range(word_length: int) -> ChaoticRange:
    """ceil(3.57 * 2^(n-2)) .. 2^n - 1 (4.0 itself is unrepresentable)."""
    if not MIN_WORD_LENGTH <= word_length <= MAX_WORD_LENGTH:
        raise FxRangeError(f"word length {word_length} outside [{MIN_WORD_LENGTH}, {MAX_WORD_LENGTH}]")
    scaled = CHAOTIC_LOWER * (1 << (word_length - 2))
    g_min = -((-scaled.numerator) // scaled.denominator)
    return ChaoticRange(word_length, g_min, (1 << word_length) - 1)


def logistic_step_raw(x: int, g: int, word_length: int) -> int:
    """Integer kernel of logistic_step; x and g are raw words."""
    mask = (1 << word_length) - 1
    t = (x * ((-x) & mask)) >> word_length
    return mul_gamma_raw(g, t, word_length)


def logistic_step(x: FxWord, g: FxWord) -> FxWord:
    """One iteration: mul_gamma(g, mul_state(x, one_minus_wrap(x)))."""
    return mul_gamma(g, mul_state(x, one_minus_wrap(x)))


def logistic_stepper(g: int, word_length: int) -> StepFn:
    """Bind a fixed raw gamma into a single-argument step function."""
    if not 0 <= g < (1 << word_length):
        raise FxRangeError(f"gamma {g:#x} does not fit {gamma_format(word_length)}")

    def step(x: int) -> int:
        return logistic_step_raw(x, g, word_length)

    return step
