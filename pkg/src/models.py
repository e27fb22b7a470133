from datetime import datetime
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator

from .fxp import FxWord, format_raw, gamma_format, parse_raw, state_format
from .maps import chaotic_range

SCHEMA_VERSION = "1.0.0"
REPORT_FORMAT_VERSION = "1.0.0"
BITSTREAM_FORMAT_VERSION = "1.0.0"


class GeneratorName(str, Enum):
    DYNAMICAL = "dynamical"
    LOGISTIC32 = "logistic32"
    LOGISTIC64 = "logistic64"
    LFSR32 = "lfsr32"
    GLIBC = "glibc"
    SPLITMIX64 = "splitmix64"


class GlibcMode(str, Enum):
    """Bit extraction from each glibc LCG output word.

    `word32` writes each output as a 32-bit big-endian word, the way rand()
    values land in a file of ints; its leading bit is always 0.
    """
    ALL31 = "all31"
    WORD32 = "word32"
    LSB = "lsb"
    BIT30 = "bit30"


class BitFormat(str, Enum):
    ASCII = "ascii"
    BIN = "bin"


class SeedConfig(BaseModel):
    """Full seed of the dynamical (and raw logistic) generator."""

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    schema_version: str = Field(SCHEMA_VERSION, alias="schemaVersion")
    word_length: int = Field(32, alias="wordLength", ge=8, le=64, description="Word length n in bits")
    x0: int = Field(..., description="Initial state, raw Q0.n word")
    gammas: List[int] = Field(..., min_length=1, description="Raw Q2.(n-2) chaotic parameters")
    k_min: int = Field(9, alias="kMin", ge=1, description="Shortest run under one gamma")
    k_max: int = Field(11, alias="kMax", ge=1, description="Longest run under one gamma")
    partition_seed: int = Field(12345, alias="partitionSeed", description="Seed of the partition LCG")

    @field_validator("x0", mode="before")
    @classmethod
    def _parse_x0(cls, v: Any) -> int:
        return parse_raw(v)

    @field_validator("gammas", mode="before")
    @classmethod
    def _parse_gammas(cls, v: Any) -> List[int]:
        return [parse_raw(g) for g in v]

    @model_validator(mode="after")
    def _check_ranges(self) -> "SeedConfig":
        n = self.word_length
        if not 0 < self.x0 < (1 << n):
            raise ValueError(f"x0: must be a nonzero {n}-bit word, got {format_raw(self.x0)}")
        bounds = chaotic_range(n)
        for i, g in enumerate(self.gammas):
            if g not in bounds:
                raise ValueError(
                    f"gammas[{i}]: {format_raw(g)} outside chaotic range "
                    f"[{format_raw(bounds.g_min)}, {format_raw(bounds.g_max)}]"
                )
        if self.k_min > self.k_max:
            raise ValueError(f"kMin: {self.k_min} exceeds kMax {self.k_max}")
        if not 0 < self.partition_seed < (1 << 31):
            raise ValueError(f"partitionSeed: must be in (0, 2^31), got {self.partition_seed}")
        return self

    @field_serializer("x0")
    def _ser_x0(self, v: int) -> str:
        return format_raw(v)

    @field_serializer("gammas")
    def _ser_gammas(self, v: List[int]) -> List[str]:
        return [format_raw(g) for g in v]

    @property
    def m(self) -> int:
        return len(self.gammas)

    @property
    def x0_word(self) -> FxWord:
        return FxWord(self.x0, state_format(self.word_length))

    @property
    def gamma_words(self) -> List[FxWord]:
        fmt = gamma_format(self.word_length)
        return [FxWord(g, fmt) for g in self.gammas]


class GeneratorSpec(BaseModel):
    """Everything needed to rebuild a bit source deterministically."""

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    name: GeneratorName
    seed: Optional[SeedConfig] = Field(None, description="Explicit seed for dynamical/logistic sources")
    master_seed: Optional[int] = Field(None, alias="masterSeed", description="64-bit master seed")
    state: Optional[int] = Field(None, description="Initial state for lfsr32, glibc and splitmix64")
    glibc_mode: GlibcMode = Field(GlibcMode.ALL31, alias="glibcMode")
    bits_per_element: int = Field(1, alias="bitsPerElement", ge=1, le=64)

    @field_validator("master_seed", "state", mode="before")
    @classmethod
    def _parse_int(cls, v: Any) -> Optional[int]:
        return None if v is None else parse_raw(v)

    @field_serializer("master_seed", "state")
    def _ser_int(self, v: Optional[int]) -> Optional[str]:
        return None if v is None else format_raw(v)


class RunManifest(BaseModel):
    """Provenance embedded in every output so a result can be regenerated."""

    model_config = ConfigDict(populate_by_name=True)

    command: str
    config: Dict[str, Any] = Field(default_factory=dict, description="Resolved run configuration")
    generator: Optional[GeneratorSpec] = None
    inputs: List[str] = Field(default_factory=list)
    outputs: List[str] = Field(default_factory=list)
    format_versions: Dict[str, str] = Field(
        default_factory=lambda: {
            "schema": SCHEMA_VERSION,
            "report": REPORT_FORMAT_VERSION,
            "bitstream": BITSTREAM_FORMAT_VERSION,
        },
        alias="formatVersions",
    )
    started_at: datetime = Field(default_factory=datetime.now, alias="startedAt")
    elapsed_seconds: Optional[float] = Field(None, alias="elapsedSeconds")
    notes: List[str] = Field(default_factory=list)
