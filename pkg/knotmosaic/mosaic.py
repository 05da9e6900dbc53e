"""
Mosaic

The n x n tile grid: parsing, suitable connectedness, strand tracing,
caps, symmetry transforms and canonical forms.

A mosaic whose cells are all deterministic tiles can be traced into
strands. Shadows and layout templates carry NTile cells and support every
structural operation except tracing.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Literal

import numpy as np

from knotmosaic.errors import ConnectivityError, MosaicParseError
from knotmosaic.tiles import (
    DIAGRAM_GROUP,
    SQUARE_GROUP,
    Cell,
    NTile,
    Side,
    Symmetry,
    Tile,
    connection_points,
    is_over,
    parse_token,
    partner,
    transform_tile,
)

Position = tuple[int, int]
CapKind = Literal["top", "right", "bottom", "left"]
CutOrientation = Literal["horizontal", "vertical"]

_SIDE_ORDER = (Side.TOP, Side.RIGHT, Side.BOTTOM, Side.LEFT)


@dataclass(frozen=True)
class Mosaic:
    """
    Square grid of tiles.

    Attributes:
        cells: Rows of cells, each a Tile or an NTile
    """

    cells: tuple[tuple[Cell, ...], ...]

    @property
    def n(self) -> int:
        return len(self.cells)

    def __getitem__(self, position: Position) -> Cell:
        r, c = position
        return self.cells[r][c]

    def __str__(self) -> str:
        return serialize(self)

    def positions(self) -> Iterable[Position]:
        for r in range(self.n):
            for c in range(self.n):
                yield r, c

    def in_bounds(self, position: Position) -> bool:
        r, c = position
        return 0 <= r < self.n and 0 <= c < self.n

    @property
    def is_deterministic(self) -> bool:
        return all(isinstance(cell, Tile) for row in self.cells for cell in row)

    @property
    def non_blank_count(self) -> int:
        return sum(1 for row in self.cells for cell in row if cell != Tile.T0)

    def crossing_cells(self) -> list[Position]:
        """Positions of crossing tiles and crossing-only domains, row-major."""
        return [
            (r, c)
            for r, c in self.positions()
            if _is_crossing_cell(self.cells[r][c])
        ]

    def with_cells(self, updates: dict[Position, Cell]) -> "Mosaic":
        """Return a copy with the given cells replaced."""
        rows = [list(row) for row in self.cells]
        for (r, c), cell in updates.items():
            rows[r][c] = cell
        return Mosaic(tuple(tuple(row) for row in rows))

    @classmethod
    def blank(cls, n: int) -> "Mosaic":
        return cls(tuple(tuple(Tile.T0 for _ in range(n)) for _ in range(n)))

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Cell]]) -> "Mosaic":
        return cls(tuple(tuple(row) for row in rows))


def _is_crossing_cell(cell: Cell) -> bool:
    if isinstance(cell, NTile):
        return cell.domain <= {Tile.T9, Tile.T10}
    return cell.is_crossing


def parse_mosaic(text: str) -> Mosaic:
    """
    Parse mosaic text.

    Lines starting with '#' and blank lines are ignored; every other line
    is one row of whitespace-separated tile tokens.

    Raises:
        MosaicParseError: On a non-square grid, unknown token or n < 2.
    """
    rows: list[tuple[Cell, ...]] = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        rows.append(tuple(parse_token(token) for token in stripped.split()))

    n = len(rows)
    if n < 2:
        raise MosaicParseError(f"mosaic must have at least 2 rows, got {n}")
    for index, row in enumerate(rows):
        if len(row) != n:
            raise MosaicParseError(
                f"row {index} has {len(row)} tiles, expected {n} (non-square)"
            )
    return Mosaic(tuple(rows))


def serialize(m: Mosaic) -> str:
    """Serialize with single spaces and a newline after each row."""
    return "".join(" ".join(cell.token for cell in row) + "\n" for row in m.cells)


def read_mosaic_file(path: Path) -> Mosaic:
    return parse_mosaic(Path(path).read_text(encoding="utf-8"))


def write_mosaic_file(path: Path, m: Mosaic, comment: str | None = None) -> None:
    header = "".join(f"# {line}\n" for line in comment.splitlines()) if comment else ""
    Path(path).write_text(header + serialize(m), encoding="utf-8")


def cell_points(cell: Cell) -> frozenset[Side]:
    """
    Connection points of a cell.

    Raises:
        ConnectivityError: If a domain mixes connection-point sets.
    """
    if isinstance(cell, NTile):
        points = cell.uniform_points
        if points is None:
            raise ConnectivityError(f"domain {cell.token} has no fixed connections")
        return points
    return connection_points(cell)


@dataclass(frozen=True)
class Violation:
    """
    First unmatched connection point found in row-major order.

    Attributes:
        position: Cell holding the unmatched point
        side: Side of that cell
    """

    position: Position
    side: Side

    def __str__(self) -> str:
        r, c = self.position
        return f"unmatched connection point at ({r}, {c}) {self.side.value}"


def is_suitably_connected(m: Mosaic) -> Violation | None:
    """
    Check that every connection point meets a neighbouring one.

    Returns:
        None when the mosaic is suitably connected, otherwise the first
        violation in row-major order.
    """
    for r, c in m.positions():
        points = cell_points(m.cells[r][c])
        for side in _SIDE_ORDER:
            if side not in points:
                continue
            dr, dc = side.offset
            neighbour = (r + dr, c + dc)
            if not m.in_bounds(neighbour):
                return Violation((r, c), side)
            if side.opposite not in cell_points(m[neighbour]):
                return Violation((r, c), side)
    return None


@dataclass(frozen=True)
class StrandStep:
    """
    One pass of a strand through a cell.

    Attributes:
        position: Cell visited
        entry: Side the strand enters by
        exit: Side the strand leaves by
        over: Over/under at a crossing, None elsewhere
    """

    position: Position
    entry: Side
    exit: Side
    over: bool | None = None


@dataclass(frozen=True)
class Strand:
    """Closed curve as the ordered cell passes it makes."""

    steps: tuple[StrandStep, ...]

    def crossing_visits(self) -> list[StrandStep]:
        return [step for step in self.steps if step.over is not None]


def _require_traceable(m: Mosaic) -> None:
    if not m.is_deterministic:
        raise ConnectivityError("tracing needs every cell to be a fixed tile")
    violation = is_suitably_connected(m)
    if violation is not None:
        raise ConnectivityError(
            f"mosaic is not suitably connected: {violation}",
            position=violation.position,
            side=violation.side.value,
        )


def trace(m: Mosaic) -> list[Strand]:
    """
    Trace every closed curve of a knot mosaic.

    Each strand starts at the first unused connection point in row-major
    order and follows the tile routing. Crossing passes record whether
    the strand goes over.

    Raises:
        ConnectivityError: If the mosaic is not deterministic and suitably
            connected.
    """
    _require_traceable(m)
    consumed: set[tuple[Position, Side]] = set()
    strands: list[Strand] = []

    for position in m.positions():
        tile = m[position]
        assert isinstance(tile, Tile)
        for side in _SIDE_ORDER:
            if side not in connection_points(tile) or (position, side) in consumed:
                continue
            strands.append(_follow(m, position, side, consumed))
    return strands


def _follow(
    m: Mosaic,
    start: Position,
    entry: Side,
    consumed: set[tuple[Position, Side]],
) -> Strand:
    steps: list[StrandStep] = []
    position, side = start, entry
    while True:
        tile = m[position]
        assert isinstance(tile, Tile)
        exit_side = partner(tile, side)
        over = is_over(tile, side) if tile.is_crossing else None
        steps.append(StrandStep(position, side, exit_side, over))
        consumed.add((position, side))
        consumed.add((position, exit_side))
        dr, dc = exit_side.offset
        position = (position[0] + dr, position[1] + dc)
        side = exit_side.opposite
        if position == start and side == entry:
            return Strand(tuple(steps))


def component_count(m: Mosaic) -> int:
    return len(trace(m))


def transform(m: Mosaic, g: Symmetry) -> Mosaic:
    """Apply a square symmetry to the grid and to every tile."""
    grid = np.empty((m.n, m.n), dtype=object)
    for r, c in m.positions():
        grid[r, c] = m.cells[r][c]
    if g.reflected:
        grid = np.fliplr(grid)
    grid = np.rot90(grid, k=g.quarter_turns)
    return Mosaic(
        tuple(tuple(transform_tile(cell, g) for cell in row) for row in grid)
    )


def canonical_key(m: Mosaic, mirror: bool = False) -> str:
    """Least serialization over the square group, or with mirrors included."""
    group = DIAGRAM_GROUP if mirror else SQUARE_GROUP
    return min(serialize(transform(m, g)) for g in group)


def canonical_form(m: Mosaic, mirror: bool = False) -> Mosaic:
    """
    Canonical representative of a mosaic's symmetry orbit.

    Args:
        m: Mosaic or shadow
        mirror: Include the global crossing flip (16 elements instead of 8)
    """
    return parse_mosaic(canonical_key(m, mirror))


@dataclass(frozen=True)
class Cap:
    """
    Two adjacent arcs closing off a strand toward one side.

    Attributes:
        kind: Direction the cap faces away from
        positions: The two arc cells, top/left one first
    """

    kind: CapKind
    positions: tuple[Position, Position]


_CAP_SHAPES: tuple[tuple[CapKind, Position, Tile, Tile], ...] = (
    ("top", (0, 1), Tile.T2, Tile.T1),
    ("bottom", (0, 1), Tile.T3, Tile.T4),
    ("left", (1, 0), Tile.T2, Tile.T3),
    ("right", (1, 0), Tile.T1, Tile.T4),
)


def find_caps(m: Mosaic) -> list[Cap]:
    """Return every cap, ordered by kind then row-major position."""
    caps: list[Cap] = []
    for kind, (dr, dc), first, second in _CAP_SHAPES:
        for r, c in m.positions():
            other = (r + dr, c + dc)
            if not m.in_bounds(other):
                continue
            if m[(r, c)] == first and m[other] == second:
                caps.append(Cap(kind, ((r, c), other)))
    return caps


def occupied_bounds(m: Mosaic) -> tuple[int, int, int, int] | None:
    """First and last occupied row and column, or None for a blank mosaic."""
    occupied = [(r, c) for r, c in m.positions() if m[(r, c)] != Tile.T0]
    if not occupied:
        return None
    rows = [r for r, _ in occupied]
    cols = [c for _, c in occupied]
    return min(rows), max(rows), min(cols), max(cols)


@dataclass(frozen=True)
class CutWitness:
    """
    Grid line met by the knot in exactly two points.

    Attributes:
        orientation: Horizontal line between rows or vertical between columns
        index: The line lies before this row or column
        parts: The mosaic with everything past the line blanked, and the
            mosaic with everything before it blanked
    """

    orientation: CutOrientation
    index: int
    parts: tuple[Mosaic, Mosaic]


def straight_cut_split(m: Mosaic) -> CutWitness | None:
    """
    Find a straight grid line splitting the crossings in two.

    The line must be crossed by exactly two strand points and have at
    least one crossing tile on each side.
    """
    crossings = m.crossing_cells()
    if not crossings:
        return None

    for index in range(1, m.n):
        points = sum(
            1 for c in range(m.n) if Side.BOTTOM in cell_points(m[(index - 1, c)])
        )
        before = sum(1 for r, _ in crossings if r < index)
        if points == 2 and 0 < before < len(crossings):
            return CutWitness("horizontal", index, _split(m, index, axis=0))

    for index in range(1, m.n):
        points = sum(
            1 for r in range(m.n) if Side.RIGHT in cell_points(m[(r, index - 1)])
        )
        before = sum(1 for _, c in crossings if c < index)
        if points == 2 and 0 < before < len(crossings):
            return CutWitness("vertical", index, _split(m, index, axis=1))
    return None


def _split(m: Mosaic, index: int, axis: int) -> tuple[Mosaic, Mosaic]:
    first: dict[Position, Cell] = {}
    second: dict[Position, Cell] = {}
    for r, c in m.positions():
        coordinate = r if axis == 0 else c
        if coordinate < index:
            second[(r, c)] = Tile.T0
        else:
            first[(r, c)] = Tile.T0
    return m.with_cells(first), m.with_cells(second)


def crossing_sequence(strand: Strand) -> list[Position]:
    """Crossing cells in the order the strand visits them."""
    return [step.position for step in strand.crossing_visits()]


def reducible_crossings(m: Mosaic) -> list[Position]:
    """
    Crossings that can be untwisted without changing the knot.

    A crossing is reducible when every crossing met between its two
    visits is met twice there, so one side of it is a closed-off tangle.
    Only single-component mosaics are examined.
    """
    strands = trace(m)
    if len(strands) != 1:
        return []
    sequence = crossing_sequence(strands[0])
    reducible: list[Position] = []
    for position in m.crossing_cells():
        first, second = (i for i, p in enumerate(sequence) if p == position)
        inside = sequence[first + 1 : second]
        if all(inside.count(p) == 2 for p in inside):
            reducible.append(position)
    return reducible
