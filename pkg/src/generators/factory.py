"""
Build bit sources from a GeneratorSpec.

`resolve_spec` turns a master-seed spec into its explicit form so manifests
record the exact state every run started from.
"""

import logging

from ..errors import SeedValidationError
from ..models import GeneratorName, GeneratorSpec
from .base import BitGenerator
from .dynamical import DynamicalGenerator
from .lcg import GlibcLcgGenerator
from .lfsr import Lfsr32Generator
from .logistic import LogisticGenerator
from .seeding import derive_glibc_state, derive_lfsr_state, derive_seed
from .splitmix import SplitMix64Generator

logger = logging.getLogger(__name__)

_LOGISTIC_WIDTH = {GeneratorName.LOGISTIC32: 32, GeneratorName.LOGISTIC64: 64}


def resolve_spec(spec: GeneratorSpec) -> GeneratorSpec:
    """Fill in explicit seeds derived from master_seed when missing."""
    name = spec.name
    if name is GeneratorName.DYNAMICAL or name in _LOGISTIC_WIDTH:
        if spec.seed is not None:
            width = _LOGISTIC_WIDTH.get(name)
            if width is not None and spec.seed.word_length != width:
                raise SeedValidationError(
                    "wordLength", f"{name.value} needs word length {width}, got {spec.seed.word_length}"
                )
            return spec
        if spec.master_seed is None:
            raise SeedValidationError("seed", f"{name.value} needs a seed file or a master seed")
        if name is GeneratorName.DYNAMICAL:
            seed = derive_seed(spec.master_seed, 32, 8, 9, 11)
        else:
            seed = derive_seed(spec.master_seed, _LOGISTIC_WIDTH[name], m=1)
        return spec.model_copy(update={"seed": seed})

    if spec.state is not None:
        return spec
    if spec.master_seed is None:
        raise SeedValidationError("state", f"{name.value} needs a state or a master seed")
    if name is GeneratorName.LFSR32:
        state = derive_lfsr_state(spec.master_seed)
    elif name is GeneratorName.GLIBC:
        state = derive_glibc_state(spec.master_seed)
    else:
        state = spec.master_seed
    return spec.model_copy(update={"state": state})


def build_generator(spec: GeneratorSpec) -> BitGenerator:
    spec = resolve_spec(spec)
    name = spec.name
    if name is GeneratorName.DYNAMICAL:
        return DynamicalGenerator(spec.seed, bits_per_element=spec.bits_per_element)
    if name in _LOGISTIC_WIDTH:
        if spec.seed.m > 1:
            logger.warning(f"⚠️  {name.value} uses gammas[0] only; {spec.seed.m - 1} extra gammas ignored")
        return LogisticGenerator(
            spec.seed.x0,
            spec.seed.gammas[0],
            spec.seed.word_length,
            bits_per_element=spec.bits_per_element,
        )
    if name is GeneratorName.LFSR32:
        return Lfsr32Generator(spec.state)
    if name is GeneratorName.GLIBC:
        return GlibcLcgGenerator(spec.state, spec.glibc_mode)
    return SplitMix64Generator(spec.state)
