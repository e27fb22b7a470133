"""
Bitwise dynamical PRNG: the digitized logistic map with its parameter rotated
through gammas[0..m-1]. Each gamma is held for k iterations, k drawn afresh
from the partition LCG at every switch; after gammas[m-1] the rotation
wraps to gammas[0]. The output is the low bit(s) of every element.
"""

import logging
from dataclasses import dataclass, replace
from typing import Callable, List, Tuple

from ..fxp import FxWord
from ..maps import logistic_step
from ..models import SeedConfig
from .base import BitGenerator
from .lcg import K_DRAW_SHIFT, LCG_INCREMENT, LCG_MASK, LCG_MULTIPLIER, PartitionLcg, draw_k

logger = logging.getLogger(__name__)

KDraw = Callable[[PartitionLcg, int, int], Tuple[int, PartitionLcg]]


@dataclass(frozen=True)
class DynamicalState:
    x: FxWord
    gamma_index: int
    remaining: int
    lcg: PartitionLcg
    config: SeedConfig
    absorbed: bool = False


def initial_state(config: SeedConfig, draw: KDraw = draw_k) -> DynamicalState:
    """State before the first element; the first run length is drawn here."""
    k, lcg = draw(PartitionLcg(config.partition_seed), config.k_min, config.k_max)
    return DynamicalState(x=config.x0_word, gamma_index=0, remaining=k, lcg=lcg, config=config)


def dynamical_next_element(s: DynamicalState, draw: KDraw = draw_k) -> Tuple[FxWord, DynamicalState]:
    config = s.config
    x = logistic_step(s.x, config.gamma_words[s.gamma_index])
    gamma_index, remaining, lcg = s.gamma_index, s.remaining - 1, s.lcg
    if remaining == 0:
        gamma_index = (gamma_index + 1) % config.m
        remaining, lcg = draw(lcg, config.k_min, config.k_max)
    nxt = replace(
        s,
        x=x,
        gamma_index=gamma_index,
        remaining=remaining,
        lcg=lcg,
        absorbed=s.absorbed or x.raw == 0,
    )
    return x, nxt


def dynamical_next_bit(s: DynamicalState, draw: KDraw = draw_k) -> Tuple[int, DynamicalState]:
    x, s = dynamical_next_element(s, draw)
    return x.raw & 1, s


class DynamicalGenerator(BitGenerator):
    """Mutable bit source over the dynamical state machine.

    `absorbed` is set once the orbit reaches the zero fixed point; the
    generator keeps running (every later element is 0) and the flag is left
    for callers to report.
    """

    name = "dynamical"

    def __init__(self, config: SeedConfig, bits_per_element: int = 1):
        super().__init__()
        if not 1 <= bits_per_element <= config.word_length:
            raise ValueError(f"bits_per_element must be in [1, {config.word_length}]")
        self.config = config
        self.bits_per_element = bits_per_element
        self.reset()

    def reset(self) -> None:
        start = initial_state(self.config)
        self._x = start.x.raw
        self._gamma_index = start.gamma_index
        self._remaining = start.remaining
        self._lcg = start.lcg.state
        self._absorbed = False
        self._pending = []

    @property
    def state(self) -> DynamicalState:
        return DynamicalState(
            x=FxWord(self._x, self.config.x0_word.format),
            gamma_index=self._gamma_index,
            remaining=self._remaining,
            lcg=PartitionLcg(self._lcg),
            config=self.config,
            absorbed=self._absorbed,
        )

    @property
    def absorbed(self) -> bool:
        return self._absorbed

    def _mark_absorbed(self) -> None:
        if not self._absorbed:
            self._absorbed = True
            logger.warning(f"⚠️  Dynamical orbit absorbed at x = 0 (seed x0={self.config.x0:#x})")

    def _load(self, s: DynamicalState) -> None:
        self._x = s.x.raw
        self._gamma_index = s.gamma_index
        self._remaining = s.remaining
        self._lcg = s.lcg.state
        if s.absorbed:
            self._mark_absorbed()
        else:
            self._absorbed = False

    def _step_bits(self) -> List[int]:
        x, s = dynamical_next_element(self.state)
        self._load(s)
        b = self.bits_per_element
        return [(x.raw >> j) & 1 for j in range(b - 1, -1, -1)]

    def _fill_fast(self, out: bytearray, start: int) -> None:
        # Same arithmetic as logistic_step on raw ints. x(1-x) <= 2^(n-2),
        # so the gamma product always fits and needs no overflow check.
        config = self.config
        n = config.word_length
        shift = n - 2
        mask = (1 << n) - 1
        gammas = config.gammas
        m = config.m
        k_min = config.k_min
        span = config.k_max - config.k_min + 1
        b = self.bits_per_element
        x, gi, rem, lcg = self._x, self._gamma_index, self._remaining, self._lcg
        g = gammas[gi]
        count = len(out)
        i = start
        while i < count:
            x = (g * ((x * ((-x) & mask)) >> n)) >> shift
            rem -= 1
            if rem == 0:
                gi += 1
                if gi == m:
                    gi = 0
                g = gammas[gi]
                lcg = (LCG_MULTIPLIER * lcg + LCG_INCREMENT) & LCG_MASK
                rem = k_min + ((lcg >> K_DRAW_SHIFT) % span)
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
        self._x, self._gamma_index, self._remaining, self._lcg = x, gi, rem, lcg
        if x == 0:
            self._mark_absorbed()
