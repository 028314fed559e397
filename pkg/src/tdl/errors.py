"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: domain/capacity errors exit 1,
validation and verification failures exit 2.
"""

from __future__ import annotations


class TdlError(Exception):
    """Base class for all library errors."""


class DomainError(TdlError, ValueError):
    """An argument lies outside the domain of the operation."""


class CapacityError(DomainError):
    """A brute-force guard or format limit would be exceeded."""


class ValidationError(TdlError, ValueError):
    """Input violates a structural invariant (loops, overlaps, non-paths...)."""


class ParseError(ValidationError):
    """Malformed encoded input. ``offset`` is the byte offset of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


class ConsistencyError(TdlError, AssertionError):
    """An internal invariant broke. Always a defect, never a user error."""
