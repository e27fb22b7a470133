"""
Common bit-source contract.

A bit source produces an infinite deterministic bit sequence from its seed
and can be reset to replay it. Instances are sequential state machines:
never advance one instance from two threads or processes at once.
"""

from abc import ABC, abstractmethod
from typing import List, Protocol, runtime_checkable

import numpy as np

from ..bitio import BitStream


@runtime_checkable
class BitSource(Protocol):
    def next_bit(self) -> int: ...

    def fill(self, count: int) -> BitStream: ...

    def reset(self) -> None: ...


class BitGenerator(ABC):
    """Base class for the shipped generators.

    Subclasses produce bits in groups (one state word per step) through
    `_step_bits`; `fill` drains the carried group first so that mixing
    `next_bit` and `fill` calls never skips or repeats a bit.
    """

    name: str = "generator"

    def __init__(self) -> None:
        self._pending: List[int] = []

    @abstractmethod
    def reset(self) -> None:
        """Return to the seeded initial state."""

    @abstractmethod
    def _step_bits(self) -> List[int]:
        """Advance one step and return the bits it emits, in output order."""

    def next_bit(self) -> int:
        if not self._pending:
            # stored reversed so pop() yields output order
            self._pending = self._step_bits()[::-1]
        return self._pending.pop()

    def _fill_fast(self, out: bytearray, start: int) -> None:
        """Fill out[start:] by stepping; subclasses override with tight loops."""
        for i in range(start, len(out)):
            out[i] = self.next_bit()

    def fill(self, count: int) -> BitStream:
        if count < 1:
            raise ValueError(f"count must be >= 1, got {count}")
        out = bytearray(count)
        i = 0
        while self._pending and i < count:
            out[i] = self._pending.pop()
            i += 1
        if i < count:
            self._fill_fast(out, i)
        return BitStream(np.frombuffer(bytes(out), dtype=np.uint8))


def fill_bits(source: BitSource, count: int) -> BitStream:
    """Exactly `count` bits from the source, in generation order."""
    return source.fill(count)
