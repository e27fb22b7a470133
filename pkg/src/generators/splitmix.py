"""
SplitMix64: seed expansion for derived configurations, trial draws for the
period experiment, and the reference-strong bit source used to calibrate the
test suite.
"""

from typing import List, Tuple

from .base import BitGenerator

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64_next(state: int) -> Tuple[int, int]:
    """Return (output, state') for one SplitMix64 step."""
    state = (state + GOLDEN_GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31), state


class SplitMix64:
    """Stateful draw stream over splitmix64_next."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def draw(self) -> int:
        out, self.state = splitmix64_next(self.state)
        return out

    def draw_bits(self, bits: int) -> int:
        """Top `bits` bits of the next 64-bit draw."""
        return self.draw() >> (64 - bits)


class SplitMix64Generator(BitGenerator):
    """Emits each 64-bit output most significant bit first."""

    name = "splitmix64"

    def __init__(self, seed: int):
        super().__init__()
        self.seed = seed & MASK64
        self.reset()

    def reset(self) -> None:
        self.state = self.seed
        self._pending = []

    def _step_bits(self) -> List[int]:
        out, self.state = splitmix64_next(self.state)
        return [(out >> j) & 1 for j in range(63, -1, -1)]

    def _fill_fast(self, out: bytearray, start: int) -> None:
        # whole words go through int.to_bytes + a 256-entry table
        count = len(out)
        state = self.state
        i = start
        while i < count:
            word, state = splitmix64_next(state)
            if count - i >= 64:
                out[i:i + 64] = b"".join(_BYTE_BITS[b] for b in word.to_bytes(8, "big"))
                i += 64
            else:
                take = count - i
                for j in range(take):
                    out[i + j] = (word >> (63 - j)) & 1
                self._pending = [(word >> k) & 1 for k in range(64 - take)]
                i = count
        self.state = state


_BYTE_BITS = [bytes((b >> j) & 1 for j in range(7, -1, -1)) for b in range(256)]
