"""
Exception types shared across the generator, test-suite and CLI layers.

The CLI maps these onto its exit codes (see src/cli.py).
"""

from typing import Optional


class PrngError(Exception):
    """Base class for all errors raised by this package."""


class FxRangeError(PrngError, ValueError):
    """A real value cannot be encoded in the requested fixed-point format."""


class ContractViolation(RuntimeError):
    """An internal arithmetic contract was broken by the caller.

    This is a programming error, not a data condition, and is never caught.
    """


class SeedValidationError(PrngError, ValueError):
    """A seed field is invalid for the chosen generator."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class InsufficientDataError(PrngError, ValueError):
    """A bit sequence is shorter than a statistical test's minimum."""

    def __init__(self, test_id: str, length: int, minimum: int):
        self.test_id = test_id
        self.length = length
        self.minimum = minimum
        super().__init__(f"{test_id} needs at least {minimum} bits, got {length}")


class BitstreamParseError(PrngError):
    """A bitstream file could not be decoded."""

    def __init__(self, message: str, offset: Optional[int] = None, path: Optional[str] = None):
        self.offset = offset
        self.path = path
        where = ""
        if path:
            where += f" in {path}"
        if offset is not None:
            where += f" at byte offset {offset}"
        super().__init__(f"{message}{where}")


class StatisticalGateError(PrngError):
    """The average passing rate fell below the configured floor."""

    def __init__(self, average: float, floor: float):
        self.average = average
        self.floor = floor
        super().__init__(f"average passing rate {average:.4f} below floor {floor:.4f}")
