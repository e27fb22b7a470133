"""
32-stage Fibonacci LFSR with feedback polynomial x^32 + x^22 + x^2 + x + 1
(taps 32, 22, 2, 1). The polynomial is primitive, so every nonzero state lies
on the single cycle of length 2^32 - 1.

The register shifts right: the output is bit 0, tap t reads bit 32 - t, and
the feedback enters at bit 31.
"""

from typing import List, Tuple

from ..errors import SeedValidationError
from .base import BitGenerator

LFSR_TAPS = (32, 22, 2, 1)
LFSR_WIDTH = 32
_SHIFTS = tuple(LFSR_WIDTH - t for t in LFSR_TAPS)
_MASK = (1 << LFSR_WIDTH) - 1


def lfsr32_next_bit(state: int) -> Tuple[int, int]:
    """Return (output bit, state')."""
    fb = 0
    for s in _SHIFTS:
        fb ^= state >> s
    fb &= 1
    return state & 1, (state >> 1) | (fb << (LFSR_WIDTH - 1))


class Lfsr32Generator(BitGenerator):
    name = "lfsr32"

    def __init__(self, state: int):
        super().__init__()
        if not 0 < state <= _MASK:
            raise SeedValidationError("state", f"LFSR state must be a nonzero 32-bit value, got {state}")
        self.seed = state
        self.reset()

    def reset(self) -> None:
        self.state = self.seed
        self._pending = []

    def _step_bits(self) -> List[int]:
        bit, self.state = lfsr32_next_bit(self.state)
        return [bit]

    def _fill_fast(self, out: bytearray, start: int) -> None:
        s = self.state
        for i in range(start, len(out)):
            out[i] = s & 1
            s = (s >> 1) | (((s ^ (s >> 10) ^ (s >> 30) ^ (s >> 31)) & 1) << 31)
        self.state = s
