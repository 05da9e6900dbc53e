"""
Errors

Exception hierarchy for the knot mosaic engine. Structural checks that
describe a result (suitable connectedness, pruning, space-efficiency
reports) return values instead of raising.
"""

from dataclasses import dataclass


class KnotMosaicError(Exception):
    """Base class for all engine errors."""


class MosaicParseError(KnotMosaicError, ValueError):
    """Mosaic or tile text could not be parsed."""


class ConnectivityError(KnotMosaicError, ValueError):
    """Operation needs a suitably connected, deterministic mosaic."""

    def __init__(
        self,
        message: str,
        position: tuple[int, int] | None = None,
        side: str | None = None,
    ) -> None:
        super().__init__(message)
        self.position = position
        self.side = side


class MoveError(KnotMosaicError, ValueError):
    """A move rule does not match at the requested anchor."""


class DiagramCodeError(KnotMosaicError, ValueError):
    """A diagram code violates its structural invariants."""


@dataclass
class TableLoadError(KnotMosaicError):
    """Knot table row could not be ingested."""

    line: int
    detail: str

    def __str__(self) -> str:
        return f"line {self.line}: {self.detail}"
