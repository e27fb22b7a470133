"""
Bit generators: the dynamical chaotic PRNG, its baselines, and seeding.
"""

from .base import BitGenerator, BitSource, fill_bits
from .dynamical import (
    DynamicalGenerator,
    DynamicalState,
    dynamical_next_bit,
    dynamical_next_element,
    initial_state,
)
from .factory import build_generator, resolve_spec
from .lcg import GlibcLcgGenerator, PartitionLcg, draw_k, glibc_lcg_next_bits, lcg_next
from .lfsr import Lfsr32Generator, lfsr32_next_bit
from .logistic import LogisticGenerator, logistic_raw_next_bit
from .seeding import REFERENCE_GLIBC_MODE, REFERENCE_MASTER_SEED, derive_seed, reference_spec
from .splitmix import SplitMix64, SplitMix64Generator, splitmix64_next

__all__ = [
    "BitGenerator",
    "BitSource",
    "fill_bits",
    "DynamicalGenerator",
    "DynamicalState",
    "dynamical_next_bit",
    "dynamical_next_element",
    "initial_state",
    "build_generator",
    "resolve_spec",
    "GlibcLcgGenerator",
    "PartitionLcg",
    "draw_k",
    "glibc_lcg_next_bits",
    "lcg_next",
    "Lfsr32Generator",
    "lfsr32_next_bit",
    "LogisticGenerator",
    "logistic_raw_next_bit",
    "REFERENCE_GLIBC_MODE",
    "REFERENCE_MASTER_SEED",
    "derive_seed",
    "reference_spec",
    "SplitMix64",
    "SplitMix64Generator",
    "splitmix64_next",
]
