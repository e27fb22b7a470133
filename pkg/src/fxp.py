"""
Unsigned fixed-point arithmetic modelled on an FPGA integer-multiplier datapath.

Two Q-formats are used for a word length n:
- State  (Q0.n):     x in [0, 1 - 2^-n]
- Gamma  (Q2.(n-2)): g in [0, 4 - 2^-(n-2)]

Both multiplies keep the top bits of the double-width product (truncation),
which is what a hardware multiplier followed by a bit slice produces.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from enum import Enum
from fractions import Fraction
from typing import Union

from .errors import ContractViolation, FxRangeError

MIN_WORD_LENGTH = 8
MAX_WORD_LENGTH = 64

RealLike = Union[int, float, str, Decimal, Fraction]


class FxRole(str, Enum):
    """Which quantity a word encodes."""
    STATE = "state"
    GAMMA = "gamma"


@dataclass(frozen=True)
class FxFormat:
    """Q-format descriptor for one word length and role."""

    word_length: int
    role: FxRole = FxRole.STATE

    def __post_init__(self) -> None:
        if not MIN_WORD_LENGTH <= self.word_length <= MAX_WORD_LENGTH:
            raise FxRangeError(
                f"word length {self.word_length} outside [{MIN_WORD_LENGTH}, {MAX_WORD_LENGTH}]"
            )

    @property
    def integer_bits(self) -> int:
        return 2 if self.role is FxRole.GAMMA else 0

    @property
    def fraction_bits(self) -> int:
        return self.word_length - self.integer_bits

    @property
    def modulus(self) -> int:
        return 1 << self.word_length

    @property
    def max_raw(self) -> int:
        return self.modulus - 1

    @property
    def upper_bound(self) -> Fraction:
        """Exclusive upper bound of the representable real range (1 or 4)."""
        return Fraction(1 << self.integer_bits)

    def __str__(self) -> str:
        return f"Q{self.integer_bits}.{self.fraction_bits}"


def state_format(word_length: int) -> FxFormat:
    return FxFormat(word_length, FxRole.STATE)


def gamma_format(word_length: int) -> FxFormat:
    return FxFormat(word_length, FxRole.GAMMA)


@dataclass(frozen=True)
class FxWord:
    """A raw unsigned integer interpreted in a Q-format."""

    raw: int
    format: FxFormat

    def __post_init__(self) -> None:
        if not 0 <= self.raw < self.format.modulus:
            raise FxRangeError(f"raw {self.raw:#x} does not fit in {self.format.word_length} bits")

    @property
    def value(self) -> Fraction:
        """Exact real value."""
        return Fraction(self.raw, 1 << self.format.fraction_bits)

    def __float__(self) -> float:
        return float(self.value)

    def hex(self) -> str:
        return format_raw(self.raw)


def format_raw(raw: int) -> str:
    """Lowercase 0x-prefixed hex, the serialised form of raw words."""
    return f"{raw:#x}"


def parse_raw(text: Union[str, int]) -> int:
    """Accept an int or a 0x-prefixed (or decimal) string."""
    if isinstance(text, int):
        return text
    return int(text.strip(), 0)


def _exact(v: RealLike) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (str, Decimal)):
        # decimal strings such as "3.57" are converted exactly, not via float
        return Fraction(str(v))
    return Fraction(v)


def encode_real(v: RealLike, fmt: FxFormat) -> FxWord:
    """Floor-quantise a real value into the format.

    Decimal strings are converted exactly, so encode_real("3.57", ...) is the
    floor of the true 3.57 * 2^fraction_bits rather than of its float image.
    """
    exact = _exact(v)
    if exact < 0 or exact >= fmt.upper_bound:
        raise FxRangeError(f"{v} outside [0, {fmt.upper_bound}) for {fmt}")
    raw = (exact.numerator << fmt.fraction_bits) // exact.denominator
    return FxWord(raw, fmt)


def decode(word: FxWord) -> Fraction:
    return word.value


# Integer kernels. Generators call these directly in their inner loops; the
# FxWord-level functions below are thin wrappers over them.

def one_minus_raw(raw: int, word_length: int) -> int:
    return ((1 << word_length) - raw) & ((1 << word_length) - 1)


def mul_state_raw(a: int, b: int, word_length: int) -> int:
    return (a * b) >> word_length


def mul_gamma_raw(g: int, t: int, word_length: int) -> int:
    result = (g * t) >> (word_length - 2)
    if result >> word_length:
        raise ContractViolation(
            f"gamma multiply overflow: g={g:#x}, t={t:#x} exceeds 2^{word_length - 2}"
        )
    return result


def _require_role(word: FxWord, role: FxRole, name: str) -> None:
    if word.format.role is not role:
        raise ContractViolation(f"{name} must be in {role.value} format, got {word.format.role.value}")


def one_minus_wrap(x: FxWord) -> FxWord:
    """1 - x as modular negation; x = 0 maps to 0."""
    _require_role(x, FxRole.STATE, "x")
    return FxWord(one_minus_raw(x.raw, x.format.word_length), x.format)


def mul_state(a: FxWord, b: FxWord) -> FxWord:
    """Truncating Q0.n product."""
    _require_role(a, FxRole.STATE, "a")
    _require_role(b, FxRole.STATE, "b")
    if a.format != b.format:
        raise ContractViolation("operands differ in word length")
    return FxWord(mul_state_raw(a.raw, b.raw, a.format.word_length), a.format)


def mul_gamma(g: FxWord, t: FxWord) -> FxWord:
    """Truncating Q2.(n-2) x Q0.n product, returned in Q0.n.

    The caller guarantees t <= 1/4; a result that does not fit in n bits
    raises ContractViolation.
    """
    _require_role(g, FxRole.GAMMA, "g")
    _require_role(t, FxRole.STATE, "t")
    n = t.format.word_length
    if g.format.word_length != n:
        raise ContractViolation("operands differ in word length")
    return FxWord(mul_gamma_raw(g.raw, t.raw, n), t.format)
