"""
Bit sequences and their on-disk formats.

ASCII files hold '0'/'1' characters with whitespace ignored (NIST STS data
file layout). Binary files are packed with the first generated bit in the
most significant bit of byte 0.
"""

import hashlib
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Union

import numpy as np

from .errors import BitstreamParseError
from .models import BitFormat

logger = logging.getLogger(__name__)

_ASCII_ZERO = ord("0")
_ASCII_ONE = ord("1")
_WHITESPACE = np.array([ord(c) for c in " \t\n\r\v\f"], dtype=np.uint8)


@dataclass(frozen=True, eq=False)
class BitStream:
    """A finite ordered bit sequence, one bit per uint8 element."""

    bits: np.ndarray

    def __post_init__(self) -> None:
        arr = np.ascontiguousarray(self.bits, dtype=np.uint8)
        if arr.ndim != 1:
            raise ValueError("BitStream must be one-dimensional")
        if arr.size and arr.max() > 1:
            raise ValueError("BitStream elements must be 0 or 1")
        arr.setflags(write=False)
        object.__setattr__(self, "bits", arr)

    @classmethod
    def from_string(cls, text: str) -> "BitStream":
        data = "".join(text.split())
        return cls(np.frombuffer(data.encode("ascii"), dtype=np.uint8) - _ASCII_ZERO)

    @classmethod
    def from_iterable(cls, bits: Iterable[int]) -> "BitStream":
        return cls(np.fromiter(bits, dtype=np.uint8))

    @classmethod
    def from_packed(cls, data: bytes, length: Optional[int] = None) -> "BitStream":
        unpacked = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="big")
        if length is not None:
            if length > unpacked.size:
                raise ValueError(f"packed data holds {unpacked.size} bits, {length} requested")
            unpacked = unpacked[:length]
        return cls(unpacked)

    @property
    def length(self) -> int:
        return int(self.bits.size)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, item: slice) -> "BitStream":
        if not isinstance(item, slice):
            raise TypeError("BitStream supports slicing only; use .bits for element access")
        return BitStream(self.bits[item])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitStream):
            return NotImplemented
        return self.length == other.length and bool(np.array_equal(self.bits, other.bits))

    def __hash__(self) -> int:
        return hash((self.length, self.packed()))

    def concat(self, other: "BitStream") -> "BitStream":
        return BitStream(np.concatenate([self.bits, other.bits]))

    def complement(self) -> "BitStream":
        return BitStream(1 - self.bits)

    def reversed(self) -> "BitStream":
        return BitStream(self.bits[::-1])

    def ones(self) -> int:
        return int(self.bits.sum(dtype=np.int64))

    def packed(self) -> bytes:
        return np.packbits(self.bits, bitorder="big").tobytes()

    def to_ascii(self) -> str:
        return (self.bits + _ASCII_ZERO).tobytes().decode("ascii")

    def digest(self) -> str:
        """SHA-256 over the bit length and the packed bits."""
        h = hashlib.sha256()
        h.update(self.length.to_bytes(8, "big"))
        h.update(self.packed())
        return h.hexdigest()

    def split(self, length: int, count: int) -> List["BitStream"]:
        """Consecutive, non-overlapping sequences of `length` bits."""
        if length * count > self.length:
            raise ValueError(f"{count} x {length} bits requested, {self.length} available")
        return [BitStream(self.bits[i * length:(i + 1) * length]) for i in range(count)]


def concat_streams(streams: Iterable[BitStream]) -> BitStream:
    parts = [s.bits for s in streams]
    return BitStream(np.concatenate(parts) if parts else np.empty(0, dtype=np.uint8))


def parse_ascii(data: bytes, path: Optional[str] = None) -> BitStream:
    arr = np.frombuffer(data, dtype=np.uint8)
    is_bit = (arr == _ASCII_ZERO) | (arr == _ASCII_ONE)
    bad = np.flatnonzero(~(is_bit | np.isin(arr, _WHITESPACE)))
    if bad.size:
        offset = int(bad[0])
        raise BitstreamParseError(f"unexpected byte {data[offset]:#04x}", offset=offset, path=path)
    return BitStream(arr[is_bit] - _ASCII_ZERO)


def write_bits(path: Union[str, Path], stream: BitStream, fmt: BitFormat = BitFormat.ASCII) -> Path:
    """Write a stream; ASCII output has no separators or trailing newline."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    if fmt is BitFormat.ASCII:
        target.write_text(stream.to_ascii(), encoding="ascii")
    else:
        if stream.length % 8:
            logger.warning(
                f"⚠️  {stream.length} bits is not a multiple of 8; "
                f"the last byte of {target} is zero-padded"
            )
        target.write_bytes(stream.packed())
    logger.info(f"Wrote {stream.length} bits ({fmt.value}) to {target}")
    return target


def read_bits(path: Union[str, Path], fmt: BitFormat = BitFormat.ASCII) -> BitStream:
    source = Path(path)
    data = source.read_bytes()
    if fmt is BitFormat.ASCII:
        return parse_ascii(data, path=str(source))
    return BitStream.from_packed(data)


def read_corpus(
    paths: Iterable[Union[str, Path]], fmt: BitFormat = BitFormat.ASCII, used: Optional[int] = None
) -> BitStream:
    """Concatenate several files into one stream, in argument order.

    When `used` bits of a packed corpus will be consumed and the remainder is
    under one byte of zeros, that remainder is reported as likely padding.
    """
    stream = concat_streams(read_bits(p, fmt) for p in paths)
    if used is not None and fmt is BitFormat.BIN:
        spare = stream.length - used
        if 0 < spare < 8 and not stream.bits[used:].any():
            logger.warning(f"⚠️  Ignoring the last {spare} bits of the corpus: zero bits that look like byte padding")
    return stream
