"""Raw single-gamma logistic map source (the 32- and 64-bit baselines)."""

from typing import List, Tuple

from ..fxp import FxWord, gamma_format, state_format
from ..maps import logistic_step
from ..errors import SeedValidationError
from .base import BitGenerator


def logistic_raw_next_bit(x: FxWord, g: FxWord) -> Tuple[int, FxWord]:
    x = logistic_step(x, g)
    return x.raw & 1, x


class LogisticGenerator(BitGenerator):
    def __init__(self, x0: int, gamma: int, word_length: int, bits_per_element: int = 1):
        super().__init__()
        if not 1 <= bits_per_element <= word_length:
            raise ValueError(f"bits_per_element must be in [1, {word_length}]")
        self.x0 = FxWord(x0, state_format(word_length))
        self.gamma = FxWord(gamma, gamma_format(word_length))
        if x0 == 0:
            raise SeedValidationError("x0", "must be nonzero")
        self.word_length = word_length
        self.bits_per_element = bits_per_element
        self.name = f"logistic{word_length}"
        self.reset()

    def reset(self) -> None:
        self.x = self.x0
        self._pending = []

    def _step_bits(self) -> List[int]:
        self.x = logistic_step(self.x, self.gamma)
        b = self.bits_per_element
        return [(self.x.raw >> j) & 1 for j in range(b - 1, -1, -1)]

    def _fill_fast(self, out: bytearray, start: int) -> None:
        n = self.word_length
        shift = n - 2
        mask = (1 << n) - 1
        g = self.gamma.raw
        b = self.bits_per_element
        x = self.x.raw
        count = len(out)
        i = start
        while i < count:
            x = (g * ((x * ((-x) & mask)) >> n)) >> shift
            if b == 1:
                out[i] = x & 1
                i += 1
            else:
                for j in range(b - 1, -1, -1):
                    if i == count:
                        self._pending = [(x >> k) & 1 for k in range(j + 1)]
                        break
                    out[i] = (x >> j) & 1
                    i += 1
        self.x = FxWord(x, self.x0.format)
