"""
Tiles

The eleven mosaic tiles T0-T10, nondeterministic tile domains, and their
behaviour under the symmetries of the square.

Tile table (connection points by side):

    T0   blank
    T1   arc        left-bottom
    T2   arc        right-bottom
    T3   arc        top-right
    T4   arc        top-left
    T5   segment    left-right
    T6   segment    top-bottom
    T7   double arc left-bottom + top-right
    T8   double arc right-bottom + top-left
    T9   crossing   horizontal strand over
    T10  crossing   vertical strand over

Everything else in the package reads tiles only through connection points
and the transformation laws below.
"""

import re
from dataclasses import dataclass
from enum import Enum, IntEnum
from functools import lru_cache
from typing import Literal

from knotmosaic.errors import MosaicParseError

Axis = Literal["vertical", "horizontal"]


class Side(str, Enum):
    """Side of a tile carrying at most one connection point."""

    TOP = "top"
    RIGHT = "right"
    BOTTOM = "bottom"
    LEFT = "left"

    @property
    def opposite(self) -> "Side":
        return _OPPOSITE[self]

    @property
    def offset(self) -> tuple[int, int]:
        """(row, column) step to the neighbouring cell across this side."""
        return _OFFSET[self]

    def rotate(self, quarter_turns: int) -> "Side":
        """Rotate counterclockwise by the given number of quarter turns."""
        side = self
        for _ in range(quarter_turns % 4):
            side = _SIDE_CCW[side]
        return side

    def reflect(self, axis: Axis) -> "Side":
        swap = _SIDE_REFLECT[axis]
        return swap.get(self, self)


_OPPOSITE = {
    Side.TOP: Side.BOTTOM,
    Side.BOTTOM: Side.TOP,
    Side.LEFT: Side.RIGHT,
    Side.RIGHT: Side.LEFT,
}
_OFFSET = {
    Side.TOP: (-1, 0),
    Side.RIGHT: (0, 1),
    Side.BOTTOM: (1, 0),
    Side.LEFT: (0, -1),
}
_SIDE_CCW = {
    Side.TOP: Side.LEFT,
    Side.LEFT: Side.BOTTOM,
    Side.BOTTOM: Side.RIGHT,
    Side.RIGHT: Side.TOP,
}
_SIDE_REFLECT: dict[str, dict[Side, Side]] = {
    "vertical": {Side.LEFT: Side.RIGHT, Side.RIGHT: Side.LEFT},
    "horizontal": {Side.TOP: Side.BOTTOM, Side.BOTTOM: Side.TOP},
}


class Tile(IntEnum):
    """The eleven deterministic mosaic tiles."""

    T0 = 0
    T1 = 1
    T2 = 2
    T3 = 3
    T4 = 4
    T5 = 5
    T6 = 6
    T7 = 7
    T8 = 8
    T9 = 9
    T10 = 10

    @property
    def token(self) -> str:
        return str(self.value)

    @property
    def is_crossing(self) -> bool:
        return self in (Tile.T9, Tile.T10)

    @property
    def is_arc(self) -> bool:
        return Tile.T1 <= self <= Tile.T4

    @property
    def is_segment(self) -> bool:
        return self in (Tile.T5, Tile.T6)


_T, _R, _B, _L = Side.TOP, Side.RIGHT, Side.BOTTOM, Side.LEFT

# Internal routing; crossings pass straight through.
_PAIRS: dict[Tile, tuple[tuple[Side, Side], ...]] = {
    Tile.T0: (),
    Tile.T1: ((_L, _B),),
    Tile.T2: ((_R, _B),),
    Tile.T3: ((_T, _R),),
    Tile.T4: ((_T, _L),),
    Tile.T5: ((_L, _R),),
    Tile.T6: ((_T, _B),),
    Tile.T7: ((_L, _B), (_T, _R)),
    Tile.T8: ((_R, _B), (_T, _L)),
    Tile.T9: ((_L, _R), (_T, _B)),
    Tile.T10: ((_L, _R), (_T, _B)),
}

_ROTATE_CCW = {
    Tile.T0: Tile.T0,
    Tile.T1: Tile.T2,
    Tile.T2: Tile.T3,
    Tile.T3: Tile.T4,
    Tile.T4: Tile.T1,
    Tile.T5: Tile.T6,
    Tile.T6: Tile.T5,
    Tile.T7: Tile.T8,
    Tile.T8: Tile.T7,
    Tile.T9: Tile.T10,
    Tile.T10: Tile.T9,
}

# Reflections also swap the crossing tiles, so a reflected grid depicts the
# same knot turned over in space rather than its mirror image.
_REFLECT: dict[str, dict[Tile, Tile]] = {
    "vertical": {
        Tile.T1: Tile.T2,
        Tile.T2: Tile.T1,
        Tile.T3: Tile.T4,
        Tile.T4: Tile.T3,
        Tile.T7: Tile.T8,
        Tile.T8: Tile.T7,
        Tile.T9: Tile.T10,
        Tile.T10: Tile.T9,
    },
    "horizontal": {
        Tile.T1: Tile.T4,
        Tile.T4: Tile.T1,
        Tile.T2: Tile.T3,
        Tile.T3: Tile.T2,
        Tile.T7: Tile.T8,
        Tile.T8: Tile.T7,
        Tile.T9: Tile.T10,
        Tile.T10: Tile.T9,
    },
}


def connection_points(tile: Tile) -> frozenset[Side]:
    """Return the sides of a tile that carry a connection point."""
    return frozenset(side for pair in _PAIRS[tile] for side in pair)


def connection_pairs(tile: Tile) -> tuple[tuple[Side, Side], ...]:
    """Return the internal routing of a tile as pairs of sides."""
    return _PAIRS[tile]


def partner(tile: Tile, side: Side) -> Side:
    """
    Return the side where a strand entering at `side` leaves the tile.

    Raises:
        ValueError: If the tile has no connection point on `side`.
    """
    for a, b in _PAIRS[tile]:
        if a == side:
            return b
        if b == side:
            return a
    raise ValueError(f"T{tile.value} has no connection point on {side.value}")


def is_over(tile: Tile, entry: Side) -> bool:
    """True when a strand entering a crossing at `entry` passes over."""
    horizontal = entry in (Side.LEFT, Side.RIGHT)
    return horizontal if tile == Tile.T9 else not horizontal


def rotate_tile(tile: Tile, quarter_turns: int) -> Tile:
    """Rotate a tile counterclockwise by `quarter_turns` quarter turns."""
    for _ in range(quarter_turns % 4):
        tile = _ROTATE_CCW[tile]
    return tile


def reflect_tile(tile: Tile, axis: Axis) -> Tile:
    """Reflect a tile across its vertical or horizontal axis."""
    return _REFLECT[axis].get(tile, tile)


def flip_crossing(tile: Tile) -> Tile:
    """Exchange over and under on a crossing tile; other tiles are fixed."""
    if tile == Tile.T9:
        return Tile.T10
    if tile == Tile.T10:
        return Tile.T9
    return tile


@dataclass(frozen=True)
class Symmetry:
    """
    Element of the square symmetry group, optionally with a global mirror.

    The vertical-axis reflection is applied first, then the counterclockwise
    rotation. `mirrored` exchanges every crossing and changes the knot into
    its mirror image; the other elements preserve knot type.

    Attributes:
        quarter_turns: Counterclockwise quarter turns (0-3)
        reflected: Reflect across the vertical axis before rotating
        mirrored: Flip every crossing
    """

    quarter_turns: int = 0
    reflected: bool = False
    mirrored: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "quarter_turns", self.quarter_turns % 4)

    def inverse(self) -> "Symmetry":
        if self.reflected:
            return self
        return Symmetry(-self.quarter_turns, False, self.mirrored)

    def apply_side(self, side: Side) -> Side:
        if self.reflected:
            side = side.reflect("vertical")
        return side.rotate(self.quarter_turns)


IDENTITY = Symmetry()
SQUARE_GROUP: tuple[Symmetry, ...] = tuple(
    Symmetry(q, r) for r in (False, True) for q in range(4)
)
DIAGRAM_GROUP: tuple[Symmetry, ...] = SQUARE_GROUP + tuple(
    Symmetry(g.quarter_turns, g.reflected, True) for g in SQUARE_GROUP
)


@dataclass(frozen=True)
class NTile:
    """
    Nondeterministic tile: the set of tiles a cell may still take.

    Only the three canonical domains and the symmetry images of the
    segment-or-arc domain are representable.

    Attributes:
        domain: Tiles the cell may take
    """

    domain: frozenset[Tile]

    def __post_init__(self) -> None:
        if self.domain not in _allowed_domains():
            raise MosaicParseError(f"unsupported tile domain {self.token}")

    @property
    def token(self) -> str:
        for name, domain in _CANONICAL_DOMAINS.items():
            if self.domain == domain:
                return name
        numbers = ",".join(str(t.value) for t in sorted(self.domain))
        return f"XS{{{numbers}}}"

    @property
    def uniform_points(self) -> frozenset[Side] | None:
        """Connection points shared by the whole domain, if they agree."""
        point_sets = {connection_points(t) for t in self.domain}
        return point_sets.pop() if len(point_sets) == 1 else None

    def __contains__(self, tile: object) -> bool:
        return tile in self.domain

    def __repr__(self) -> str:
        return f"NTile({self.token})"


_CANONICAL_DOMAINS: dict[str, frozenset[Tile]] = {
    "X4": frozenset({Tile.T7, Tile.T8, Tile.T9, Tile.T10}),
    "XC": frozenset({Tile.T9, Tile.T10}),
    "XS": frozenset({Tile.T5, Tile.T2}),
}


@lru_cache(maxsize=1)
def _allowed_domains() -> frozenset[frozenset[Tile]]:
    allowed = set(_CANONICAL_DOMAINS.values())
    for g in DIAGRAM_GROUP:
        for domain in _CANONICAL_DOMAINS.values():
            allowed.add(frozenset(transform_tile(t, g) for t in domain))
    return frozenset(allowed)


Cell = Tile | NTile


def transform_tile(cell: Cell, g: Symmetry) -> Cell:
    """Apply a symmetry to a single cell."""
    if isinstance(cell, NTile):
        return NTile(frozenset(_transform_single(t, g) for t in cell.domain))
    return _transform_single(cell, g)


def _transform_single(tile: Tile, g: Symmetry) -> Tile:
    if g.reflected:
        tile = reflect_tile(tile, "vertical")
    tile = rotate_tile(tile, g.quarter_turns)
    if g.mirrored:
        tile = flip_crossing(tile)
    return tile


_TOKEN_RE = re.compile(r"^[Tt]?(\d{1,2})$")
_XS_RE = re.compile(r"^XS\{(\d{1,2}),(\d{1,2})\}$")


def parse_token(token: str) -> Cell:
    """
    Parse a tile token.

    Accepts "0".."10", "T0".."T10", "X4", "XC", "XS" and "XS{a,b}".

    Raises:
        MosaicParseError: On an unknown token or unsupported domain.
    """
    if token in _CANONICAL_DOMAINS:
        return NTile(_CANONICAL_DOMAINS[token])
    match = _TOKEN_RE.match(token)
    if match:
        value = int(match.group(1))
        if value <= 10:
            return Tile(value)
    match = _XS_RE.match(token)
    if match:
        values = {int(match.group(1)), int(match.group(2))}
        if all(v <= 10 for v in values):
            return NTile(frozenset(Tile(v) for v in values))
    raise MosaicParseError(f"unknown tile token {token!r}")


def cell_token(cell: Cell) -> str:
    return cell.token


X4 = NTile(_CANONICAL_DOMAINS["X4"])
XC = NTile(_CANONICAL_DOMAINS["XC"])
XS = NTile(_CANONICAL_DOMAINS["XS"])
