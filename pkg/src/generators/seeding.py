"""
Seed derivation from a 64-bit master seed, and the documented reference
seeds every golden vector and reproduction run is pinned to.
"""

import logging
from typing import Callable

from ..errors import SeedValidationError
from ..maps import chaotic_range
from ..models import GeneratorName, GeneratorSpec, GlibcMode, SeedConfig
from .splitmix import SplitMix64

logger = logging.getLogger(__name__)

REFERENCE_MASTER_SEED = 0x123456789ABCDEF0
MAX_REJECTIONS = 1000
# rand() outputs stored as 32-bit ints
REFERENCE_GLIBC_MODE = GlibcMode.WORD32


def _first_nonzero(draw: Callable[[], int], field: str) -> int:
    for _ in range(MAX_REJECTIONS):
        value = draw()
        if value:
            return value
    raise SeedValidationError(field, f"no nonzero draw after {MAX_REJECTIONS} attempts")


def derive_seed(master: int, word_length: int = 32, m: int = 8, k_min: int = 9, k_max: int = 11) -> SeedConfig:
    """Expand a master seed through SplitMix64.

    Draw order: x0 (top n bits of the first nonzero draw), then one draw per
    gamma reduced into the chaotic range, then the partition seed (top 31
    bits of the next nonzero draw).
    """
    rng = SplitMix64(master)
    x0 = _first_nonzero(lambda: rng.draw_bits(word_length), "x0")
    bounds = chaotic_range(word_length)
    gammas = [bounds.g_min + rng.draw() % bounds.size for _ in range(m)]
    partition_seed = _first_nonzero(lambda: rng.draw_bits(31), "partitionSeed")
    return SeedConfig(
        word_length=word_length,
        x0=x0,
        gammas=gammas,
        k_min=k_min,
        k_max=k_max,
        partition_seed=partition_seed,
    )


def derive_lfsr_state(master: int) -> int:
    rng = SplitMix64(master)
    return _first_nonzero(lambda: rng.draw_bits(32), "state")


def derive_glibc_state(master: int) -> int:
    return SplitMix64(master).draw_bits(31)


def reference_spec(name: GeneratorName) -> GeneratorSpec:
    """The documented reference configuration of each generator."""
    if name is GeneratorName.GLIBC:
        return GeneratorSpec(name=name, master_seed=REFERENCE_MASTER_SEED, glibc_mode=REFERENCE_GLIBC_MODE)
    return GeneratorSpec(name=name, master_seed=REFERENCE_MASTER_SEED)
