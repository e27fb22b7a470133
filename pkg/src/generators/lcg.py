"""
Linear congruential generators.

Both the partition LCG (which draws the run lengths k_i of the dynamical
generator) and the glibc baseline use state' = (1103515245 * state + 12345)
mod 2^31. With c odd, a - 1 divisible by 4 and a power-of-two modulus the
Hull-Dobell conditions hold, so the period is the full 2^31.
"""

from dataclasses import dataclass
from typing import List, Tuple

from ..errors import SeedValidationError
from ..models import GlibcMode
from .base import BitGenerator

LCG_MULTIPLIER = 1103515245
LCG_INCREMENT = 12345
LCG_MODULUS = 1 << 31
LCG_MASK = LCG_MODULUS - 1

# k draws use bits 16..30 of the output; the low bits of a power-of-two LCG
# have short periods.
K_DRAW_SHIFT = 16


@dataclass(frozen=True)
class PartitionLcg:
    """Run-length LCG state. Seeds are nonzero (checked by SeedConfig); the
    running state passes through 0 once per period."""

    state: int

    def __post_init__(self) -> None:
        if not 0 <= self.state < LCG_MODULUS:
            raise SeedValidationError("partitionSeed", f"must be a 31-bit value, got {self.state}")


def lcg_step(state: int) -> int:
    return (LCG_MULTIPLIER * state + LCG_INCREMENT) & LCG_MASK


def lcg_next(lcg: PartitionLcg) -> Tuple[int, PartitionLcg]:
    """Advance once; the output is the new state."""
    nxt = lcg_step(lcg.state)
    return nxt, PartitionLcg(nxt)


def draw_k(lcg: PartitionLcg, k_min: int, k_max: int) -> Tuple[int, PartitionLcg]:
    """Run length in [k_min, k_max] from the high bits of the next output."""
    if k_min > k_max:
        raise ValueError(f"k_min {k_min} exceeds k_max {k_max}")
    output, lcg = lcg_next(lcg)
    return k_min + ((output >> K_DRAW_SHIFT) % (k_max - k_min + 1)), lcg


def glibc_lcg_next_bits(state: int, mode: GlibcMode = GlibcMode.ALL31) -> Tuple[List[int], int]:
    """One glibc TYPE_0 rand() step and the bits extracted from its output."""
    nxt = lcg_step(state)
    if mode is GlibcMode.ALL31 or mode is GlibcMode.WORD32:
        bits = [(nxt >> j) & 1 for j in range(30, -1, -1)]
        if mode is GlibcMode.WORD32:
            bits.insert(0, 0)
    elif mode is GlibcMode.LSB:
        bits = [nxt & 1]
    else:
        bits = [(nxt >> 30) & 1]
    return bits, nxt


class GlibcLcgGenerator(BitGenerator):
    """The glibc LCG baseline as a bit source."""

    name = "glibc"

    def __init__(self, state: int, mode: GlibcMode = GlibcMode.ALL31):
        super().__init__()
        if not 0 <= state < LCG_MODULUS:
            raise SeedValidationError("state", f"glibc state must be a 31-bit value, got {state}")
        self.seed = state
        self.mode = mode
        self.reset()

    def reset(self) -> None:
        self.state = self.seed
        self._pending = []

    def _step_bits(self) -> List[int]:
        bits, self.state = glibc_lcg_next_bits(self.state, self.mode)
        return bits

    def _fill_fast(self, out: bytearray, start: int) -> None:
        count = len(out)
        state = self.state
        i = start
        if self.mode is GlibcMode.ALL31 or self.mode is GlibcMode.WORD32:
            top = 31 if self.mode is GlibcMode.WORD32 else 30
            while i < count:
                state = (LCG_MULTIPLIER * state + LCG_INCREMENT) & LCG_MASK
                for j in range(top, -1, -1):
                    if i == count:
                        self._pending = [(state >> k) & 1 for k in range(j + 1)]
                        break
                    out[i] = (state >> j) & 1
                    i += 1
        else:
            shift = 0 if self.mode is GlibcMode.LSB else 30
            while i < count:
                state = (LCG_MULTIPLIER * state + LCG_INCREMENT) & LCG_MASK
                out[i] = (state >> shift) & 1
                i += 1
        self.state = state
