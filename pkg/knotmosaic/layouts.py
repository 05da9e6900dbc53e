"""
Layouts

Space-efficient 7-mosaic layouts: the shipped catalog, the tile-number
bounds, the corner building blocks, and a regeneration of the catalog
from the structural constraints every space-efficient mosaic satisfies.

A layout is a mosaic whose boundary cells are fixed single arcs and whose
interior cells are X4 domains (any tile with four connection points).
"""

import logging
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from pathlib import Path
from typing import Iterator, Mapping

from knotmosaic.core.config import get_settings
from knotmosaic.errors import MosaicParseError
from knotmosaic.mosaic import (
    CapKind,
    Mosaic,
    Position,
    cell_points,
    find_caps,
    occupied_bounds,
    parse_mosaic,
    serialize,
    transform,
)
from knotmosaic.moves import reduce
from knotmosaic.tiles import (
    SQUARE_GROUP,
    X4,
    XC,
    Cell,
    NTile,
    Side,
    Symmetry,
    Tile,
    connection_points,
    partner,
    transform_tile,
)

logger = logging.getLogger(__name__)

Row = tuple[Cell, ...]

_LAYOUT_TOKENS = {".": "0", "X": "X4"}


def tile_bounds(n: int) -> tuple[int, int]:
    """
    Bounds on the non-blank tile count of a space-efficient n-mosaic.

    Raises:
        ValueError: If n < 4.
    """
    if n < 4:
        raise ValueError(f"n must be at least 4, got {n}")
    upper = n * n - 4 if n % 2 == 0 else n * n - 8
    return 5 * n - 8, upper


def _layout_mosaic(text: str) -> Mosaic:
    lines = [
        " ".join(_LAYOUT_TOKENS.get(token, token) for token in line.split())
        for line in text.splitlines()
    ]
    return parse_mosaic("\n".join(lines))


_BLOCK_TEMPLATE = _layout_mosaic(". 2 1\n2 X X\n3 X X")
_BLOCK_CELLS: tuple[Position, ...] = ((1, 1), (1, 2), (2, 1), (2, 2))


def _region(m: Mosaic, anchor: Position, size: int) -> Mosaic | None:
    r0, c0 = anchor
    if r0 < 0 or c0 < 0 or r0 + size > m.n or c0 + size > m.n:
        return None
    return Mosaic.from_rows(
        [m[(r0 + r, c0 + c)] for c in range(size)] for r in range(size)
    )


def _block_orientation(m: Mosaic, anchor: Position) -> Symmetry | None:
    region = _region(m, anchor, 3)
    if region is None:
        return None
    for g in SQUARE_GROUP:
        if transform(_BLOCK_TEMPLATE, g) == region:
            return g
    return None


@dataclass(frozen=True)
class Layout:
    """
    Layout of a space-efficient mosaic.

    Attributes:
        id: Catalog identifier (e.g. "27a")
        mosaic: Boundary arcs plus X4 interior cells
        count: Declared non-blank tile count
        blocks: Top-left corners of 3x3 regions filled from building blocks
        note: Free-text description
    """

    id: str
    mosaic: Mosaic
    count: int
    blocks: tuple[Position, ...] = field(default_factory=tuple)
    note: str = ""

    def __post_init__(self) -> None:
        actual = self.mosaic.non_blank_count
        if actual != self.count:
            raise MosaicParseError(
                f"layout {self.id} declares {self.count} tiles, has {actual}"
            )
        for anchor in self.blocks:
            if _block_orientation(self.mosaic, anchor) is None:
                raise MosaicParseError(
                    f"layout {self.id} has no corner block region at {anchor}"
                )

    @property
    def n(self) -> int:
        return self.mosaic.n

    @classmethod
    def from_text(
        cls,
        text: str,
        id: str = "custom",
        count: int | None = None,
        blocks: tuple[Position, ...] = (),
        note: str = "",
    ) -> "Layout":
        """
        Build a layout from a text grid where '.' is blank and X is X4.

        Raises:
            MosaicParseError: On a malformed grid or a wrong declared count.
        """
        mosaic = _layout_mosaic(text)
        declared = mosaic.non_blank_count if count is None else count
        return cls(id, mosaic, declared, tuple(tuple(b) for b in blocks), note)

    def interior_cells(self) -> list[Position]:
        return [p for p in self.mosaic.positions() if isinstance(self.mosaic[p], NTile)]

    def block_orientation(self, anchor: Position) -> Symmetry:
        """Symmetry carrying the upper-left block template onto `anchor`."""
        g = _block_orientation(self.mosaic, anchor)
        if g is None:
            raise ValueError(f"no corner block region at {anchor}")
        return g


def _fits_interior(cell: Cell) -> bool:
    if isinstance(cell, NTile):
        return cell.domain <= X4.domain
    return cell in X4.domain


def fill_layout(layout: Layout, choices: Mapping[Position, Cell]) -> Mosaic:
    """
    Replace interior cells of a layout.

    Cells not named in `choices` keep their X4 domain.

    Raises:
        ValueError: If a position is not interior or the cell lacks four
            connection points.
    """
    interior = set(layout.interior_cells())
    for position, cell in choices.items():
        if position not in interior:
            raise ValueError(f"{position} is not an interior cell of {layout.id}")
        if not _fits_interior(cell):
            raise ValueError(f"{cell.token} cannot fill an interior cell")
    return layout.mosaic.with_cells(dict(choices))


def layout_key(m: Mosaic) -> str:
    """Least serialization over the square symmetries and translations."""
    return min(serialize(_to_corner(transform(m, g))) for g in SQUARE_GROUP)


def _to_corner(m: Mosaic) -> Mosaic:
    bounds = occupied_bounds(m)
    if bounds is None:
        return m
    r0, _, c0, _ = bounds
    return Mosaic.from_rows(
        [
            m[(r + r0, c + c0)] if r + r0 < m.n and c + c0 < m.n else Tile.T0
            for c in range(m.n)
        ]
        for r in range(m.n)
    )


def layout_catalog(path: Path | None = None) -> list[Layout]:
    """
    Load the layout catalog, ordered by tile count then id.

    Args:
        path: TOML file (settings default when omitted)

    Raises:
        MosaicParseError: On invalid TOML or a malformed entry.
    """
    return list(_load_catalog(Path(path or get_settings().layout_catalog_path)))


@lru_cache
def _load_catalog(path: Path) -> tuple[Layout, ...]:
    try:
        data = tomllib.loads(path.read_text(encoding="utf-8"))
    except tomllib.TOMLDecodeError as exc:
        raise MosaicParseError(f"{path}: {exc}") from exc

    layouts: list[Layout] = []
    for entry in data.get("layout", []):
        try:
            layouts.append(
                Layout.from_text(
                    entry["grid"],
                    id=str(entry["id"]),
                    count=int(entry["count"]),
                    blocks=tuple(tuple(b) for b in entry.get("blocks", [])),
                    note=entry.get("note", ""),
                )
            )
        except KeyError as exc:
            raise MosaicParseError(f"{path}: layout entry missing {exc}") from exc
    layouts.sort(key=lambda layout: (layout.count, layout.id))
    logger.debug("Loaded %d layouts from %s", len(layouts), path)
    return tuple(layouts)


def get_layout(layout_id: str, path: Path | None = None) -> Layout:
    """
    Catalog entry by id.

    Raises:
        KeyError: If no layout has that id.
    """
    for layout in layout_catalog(path):
        if layout.id == layout_id:
            return layout
    raise KeyError(f"unknown layout {layout_id!r}")


@dataclass(frozen=True)
class BuildingBlock:
    """
    Filling of the corner 3x3 region guarded by a top and a left cap.

    Attributes:
        mosaic: 3x3 sub-mosaic in upper-left orientation, crossings as XC
    """

    mosaic: Mosaic

    @property
    def crossings(self) -> int:
        return len(self.mosaic.crossing_cells())

    def oriented(self, g: Symmetry) -> Mosaic:
        return transform(self.mosaic, g)

    def cells(self, g: Symmetry = Symmetry()) -> dict[Position, Cell]:
        """The four inner cells, placed for the region orientation `g`."""
        placed = self.oriented(g)
        return {p: placed[p] for p in placed.positions() if placed[p] in _FILL_CELLS}


_FILL_CELLS = (Tile.T7, Tile.T8, XC)


def _as_traced(cell: Cell) -> Tile:
    return Tile.T9 if isinstance(cell, NTile) else cell


def _block_arcs(block: Mosaic) -> list[list[Position]] | None:
    """
    Crossing visits of each arc entering the block from outside.

    Returns None when a closed loop stays inside the block.
    """
    used: set[tuple[Position, Side]] = set()
    arcs: list[list[Position]] = []
    for start in block.positions():
        for side in connection_points(_as_traced(block[start])):
            dr, dc = side.offset
            if block.in_bounds((start[0] + dr, start[1] + dc)) or (start, side) in used:
                continue
            visits: list[Position] = []
            current, entry = start, side
            while True:
                tile = _as_traced(block[current])
                exit_side = partner(tile, entry)
                used.update({(current, entry), (current, exit_side)})
                if tile.is_crossing:
                    visits.append(current)
                dr, dc = exit_side.offset
                following = (current[0] + dr, current[1] + dc)
                if not block.in_bounds(following):
                    break
                current, entry = following, exit_side.opposite
            arcs.append(visits)

    total = sum(len(connection_points(_as_traced(block[p]))) for p in block.positions())
    return arcs if len(used) == total else None


def _has_kink(visits: list[Position]) -> bool:
    for i, position in enumerate(visits):
        if position in visits[i + 1 :]:
            j = visits.index(position, i + 1)
            inside = visits[i + 1 : j]
            if all(inside.count(p) == 2 for p in inside):
                return True
    return False


@lru_cache(maxsize=1)
def _building_blocks() -> tuple[BuildingBlock, ...]:
    blocks: list[BuildingBlock] = []
    for choice in product(_FILL_CELLS, repeat=len(_BLOCK_CELLS)):
        if sum(1 for cell in choice if cell == XC) < 2:
            continue
        block = _BLOCK_TEMPLATE.with_cells(dict(zip(_BLOCK_CELLS, choice)))
        arcs = _block_arcs(block)
        if arcs is None or any(_has_kink(visits) for visits in arcs):
            continue
        blocks.append(BuildingBlock(block))
    return tuple(blocks)


def building_blocks() -> list[BuildingBlock]:
    """
    Corner blocks with two, three or four crossings.

    Fillings that close off a loop or put a removable twist inside the
    block are left out.
    """
    return list(_building_blocks())


# Derivation of the 7-mosaic catalog. Every row is occupied; a layout with
# every column occupied is found in its transposed orientation.

_N = 7
_SHELL_TILES: Row = (Tile.T0, Tile.T1, Tile.T2, Tile.T3, Tile.T4, X4)
_INNER_TILES: Row = _SHELL_TILES + (Tile.T5, Tile.T6)
_POINTS: dict[Cell, frozenset[Side]] = {
    cell: cell_points(cell) for cell in _INNER_TILES
}


def _cap_columns(row: Row) -> frozenset[int]:
    columns: set[int] = set()
    for c in range(len(row) - 1):
        if row[c] == Tile.T2 and row[c + 1] == Tile.T1:
            columns.update((c, c + 1))
    return frozenset(columns)


def _rows_below(above: Row | None, alphabet: Row, last: bool) -> Iterator[Row]:
    """Rows that connect to `above`, with four-point cells inside its caps."""
    forced = _cap_columns(above) if above is not None else frozenset()
    prefix: list[Cell] = []

    def extend() -> Iterator[Row]:
        c = len(prefix)
        if c == _N:
            yield tuple(prefix)
            return
        need_top = above is not None and Side.BOTTOM in _POINTS[above[c]]
        need_left = c > 0 and Side.RIGHT in _POINTS[prefix[-1]]
        for cell in alphabet:
            points = _POINTS[cell]
            if (Side.TOP in points) != need_top or (Side.LEFT in points) != need_left:
                continue
            if c == _N - 1 and Side.RIGHT in points:
                continue
            if last and Side.BOTTOM in points:
                continue
            if c in forced and cell != X4:
                continue
            prefix.append(cell)
            yield from extend()
            prefix.pop()

    yield from extend()


def _caps_supported(upper: Row, lower: Row) -> bool:
    """Bottom, left and right caps spanning the two rows enclose X4 cells."""
    for c in range(_N):
        if c < _N - 1 and lower[c] == Tile.T3 and lower[c + 1] == Tile.T4:
            if not (upper[c] == X4 and upper[c + 1] == X4):
                return False
        if upper[c] == Tile.T2 and lower[c] == Tile.T3:
            if not (c < _N - 1 and upper[c + 1] == X4 and lower[c + 1] == X4):
                return False
        if upper[c] == Tile.T1 and lower[c] == Tile.T4:
            if not (c > 0 and upper[c - 1] == X4 and lower[c - 1] == X4):
                return False
    return True


def _crossing_points(cells: Row, side: Side) -> int:
    return sum(1 for cell in cells if side in _POINTS[cell])


def _is_connected(m: Mosaic) -> bool:
    occupied = [p for p in m.positions() if m[p] != Tile.T0]
    seen = {occupied[0]}
    stack = [occupied[0]]
    while stack:
        r, c = stack.pop()
        for side in _POINTS[m[(r, c)]]:
            dr, dc = side.offset
            following = (r + dr, c + dc)
            if following not in seen:
                seen.add(following)
                stack.append(following)
    return len(seen) == len(occupied)


def _passes_global_checks(m: Mosaic, lower: int) -> bool:
    if m.non_blank_count < lower:
        return False
    bounds = occupied_bounds(m)
    if bounds is None:
        return False
    r0, r1, c0, c1 = bounds
    if any(m[corner] != Tile.T0 for corner in ((r0, c0), (r0, c1), (r1, c0), (r1, c1))):
        return False
    for r, c in m.positions():
        if m[(r, c)] in (Tile.T5, Tile.T6) and not c0 + 2 <= c <= c1 - 2:
            return False
    for r in range(r0 + 1, r1 - 1):
        if _crossing_points(m.cells[r], Side.BOTTOM) < 4:
            return False
    for c in range(c0 + 1, c1 - 1):
        column = tuple(m[(r, c)] for r in range(m.n))
        if _crossing_points(column, Side.RIGHT) < 4:
            return False
    return _is_connected(m)


_SUPPORT_OFFSETS: dict[CapKind, Position] = {
    "top": (1, 0),
    "bottom": (-1, 0),
    "left": (0, 1),
    "right": (0, -1),
}


def _all_caps_supported(
    m: Mosaic, open_cells: frozenset[Position] = frozenset()
) -> bool:
    """
    Every cap encloses X4 cells.

    Cells in `open_cells` are still undecided. They pass unless they lie on
    the border, where no X4 cell fits.
    """
    last = m.n - 1
    for cap in find_caps(m):
        dr, dc = _SUPPORT_OFFSETS[cap.kind]
        for r, c in cap.positions:
            support = (r + dr, c + dc)
            if support in open_cells:
                if not (0 < support[0] < last and 0 < support[1] < last):
                    return False
            elif not m.in_bounds(support) or m[support] != X4:
                return False
    return True


def _cells_join(m: Mosaic) -> bool:
    for r, c in m.positions():
        points = _POINTS[m[(r, c)]]
        for side in (Side.RIGHT, Side.BOTTOM):
            dr, dc = side.offset
            following = (r + dr, c + dc)
            if not m.in_bounds(following):
                if side in points:
                    return False
            elif (side in points) != (side.opposite in _POINTS[m[following]]):
                return False
    return True


def _row_pairs() -> Iterator[tuple[Row, Row]]:
    for top in _rows_below(None, _SHELL_TILES, last=False):
        if all(cell == Tile.T0 for cell in top):
            continue
        for second in _rows_below(top, _SHELL_TILES, last=False):
            if _caps_supported(top, second):
                yield top, second


def first_two_rows_options() -> list[tuple[Row, Row]]:
    """
    Distinct first two rows of a space-efficient 7-mosaic.

    The first row is made of top caps, the cells inside each cap have four
    connection points, and no segment tiles appear. Options are compared
    up to horizontal translation and left-right reflection.
    """
    options = {_normalize_rows(top, second) for top, second in _row_pairs()}
    return sorted(options, key=_rows_text)


def _rows_text(rows: tuple[Row, Row]) -> str:
    return " / ".join(" ".join(cell.token for cell in row) for row in rows)


def _normalize_rows(top: Row, second: Row) -> tuple[Row, Row]:
    occupied = [c for c in range(_N) if top[c] != Tile.T0 or second[c] != Tile.T0]
    start, stop = occupied[0], occupied[-1] + 1
    plain = (top[start:stop], second[start:stop])
    flip = Symmetry(reflected=True)
    reflected = tuple(
        tuple(transform_tile(cell, flip) for cell in reversed(row)) for row in plain
    )
    return min(plain, reflected, key=_rows_text)  # type: ignore[arg-type]


# Reflection in the main diagonal: rows become columns.
_TRANSPOSE = Symmetry(1, reflected=True)
_CORNER_CELLS = frozenset(
    (r, c) for r in range(_N) for c in range(_N) if r < 2 or c < 2
)
_OFF_CORNER_CELLS = frozenset(Mosaic.blank(_N).positions()) - _CORNER_CELLS


def _corner_candidates() -> Iterator[Mosaic]:
    """First two rows and first two columns that agree where they overlap."""
    blank = Mosaic.blank(_N)
    tops = [
        blank.with_cells(
            {(r, c): cell for r, row in enumerate(pair) for c, cell in enumerate(row)}
        )
        for pair in _row_pairs()
    ]
    lefts = [transform(top, _TRANSPOSE) for top in tops]
    for top in tops:
        for left in lefts:
            if any(top[(r, c)] != left[(r, c)] for r in range(2) for c in range(2)):
                continue
            below = {(r, c): left[(r, c)] for r in range(2, _N) for c in range(2)}
            yield top.with_cells(below)


def _hugs_corner(m: Mosaic) -> bool:
    first_in_row = next(c for c in range(_N) if m[(0, c)] != Tile.T0)
    first_in_column = next(r for r in range(_N) if m[(r, 0)] != Tile.T0)
    return first_in_row <= 2 and first_in_column <= 2


@lru_cache(maxsize=1)
def _corner_options() -> frozenset[str]:
    """Serialized corner options, in both diagonal orientations."""
    return frozenset(
        serialize(m)
        for m in _corner_candidates()
        if _hugs_corner(m) and _all_caps_supported(m, _OFF_CORNER_CELLS)
    )


def first_two_rows_and_columns_options() -> list[Mosaic]:
    """
    Distinct first two rows and columns of a space-efficient 7-mosaic
    whose first column is occupied.

    Both pairs are first-two-rows options that agree on the shared 2x2
    corner. The first cap of the top row and of the left column starts in
    the second or third position, and every cap encloses cells that can
    hold four connection points. Options are compared up to reflection in
    the main diagonal; cells outside the two rows and columns are blank.
    """
    keys = {
        min(key, serialize(transform(parse_mosaic(key), _TRANSPOSE)))
        for key in _corner_options()
    }
    return [parse_mosaic(key) for key in sorted(keys)]


def _has_corner_option(m: Mosaic) -> bool:
    corners = _corner_options()
    for g in SQUARE_GROUP:
        placed = _to_corner(transform(m, g))
        corner = placed.with_cells({p: Tile.T0 for p in _OFF_CORNER_CELLS})
        if serialize(corner) in corners:
            return True
    return False


def _is_inner(position: Position, width: int) -> bool:
    r, c = position
    return 2 <= r <= _N - 3 and 2 <= c <= width - 3


def _outer_caps_hold(
    cells: Mapping[Position, Cell], position: Position, cell: Cell, width: int
) -> bool:
    """Caps on the extreme rows and columns enclose X4, checked on placement."""
    r, c = position
    get = cells.get
    if r == 1 and (
        (get((0, c)) == Tile.T2 and get((0, c + 1)) == Tile.T1)
        or (get((0, c - 1)) == Tile.T2 and get((0, c)) == Tile.T1)
    ):
        return cell == X4
    if c == 1 and get((r - 1, 0)) == Tile.T2 and get((r, 0)) == Tile.T3:
        return cell == X4 and get((r - 1, 1)) == X4
    if r == _N - 1 and cell == Tile.T4 and get((r, c - 1)) == Tile.T3:
        return get((r - 1, c - 1)) == X4 and get((r - 1, c)) == X4
    if c == width - 1 and cell == Tile.T4 and get((r - 1, c)) == Tile.T1:
        return get((r - 1, c - 1)) == X4 and get((r, c - 1)) == X4
    return True


def _shell_cell_fits(
    cells: Mapping[Position, Cell], position: Position, cell: Cell, width: int
) -> bool:
    r, c = position
    points = _POINTS[cell]
    if r in (0, _N - 1) and c in (0, width - 1) and cell != Tile.T0:
        return False
    if (
        (r == 0 and Side.TOP in points)
        or (r == _N - 1 and Side.BOTTOM in points)
        or (c == 0 and Side.LEFT in points)
        or (c == width - 1 and Side.RIGHT in points)
    ):
        return False
    above, left = cells.get((r - 1, c)), cells.get((r, c - 1))
    if above is not None and (Side.BOTTOM in _POINTS[above]) != (Side.TOP in points):
        return False
    if left is not None and (Side.RIGHT in _POINTS[left]) != (Side.LEFT in points):
        return False
    return _outer_caps_hold(cells, position, cell, width)


def _shell_closes(cells: Mapping[Position, Cell], width: int) -> bool:
    """Extreme rows and columns are occupied and row cuts meet four points."""
    last_row, last_column = _N - 1, width - 1
    if all(cells[(0, c)] == Tile.T0 for c in range(width)):
        return False
    if all(cells[(last_row, c)] == Tile.T0 for c in range(width)):
        return False
    if all(cells[(r, 0)] == Tile.T0 for r in range(_N)):
        return False
    if all(cells[(r, last_column)] == Tile.T0 for r in range(_N)):
        return False

    def row(r: int) -> Row:
        return tuple(cells[(r, c)] for c in range(width) if (r, c) in cells)

    if _crossing_points(row(1), Side.BOTTOM) < 4:
        return False
    if _crossing_points(row(_N - 2), Side.TOP) < 4:
        return False
    inner_width = width - 4
    return all(
        _crossing_points(row(r), Side.BOTTOM) + inner_width >= 4
        for r in range(2, _N - 3)
    )


def _shell_grids(width: int) -> Iterator[Mosaic]:
    """
    Two outermost rows and columns of a 7-row layout `width` columns wide.

    Cells of the inner block are left blank.
    """
    positions = [
        (r, c) for r in range(_N) for c in range(width) if not _is_inner((r, c), width)
    ]
    cells: dict[Position, Cell] = {}

    def extend(index: int) -> Iterator[Mosaic]:
        if index == len(positions):
            if _shell_closes(cells, width):
                yield Mosaic.blank(_N).with_cells(cells)
            return
        position = positions[index]
        for cell in _SHELL_TILES:
            if _shell_cell_fits(cells, position, cell, width):
                cells[position] = cell
                yield from extend(index + 1)
                del cells[position]

    yield from extend(0)


@lru_cache(maxsize=1)
def _shells() -> tuple[Mosaic, ...]:
    found: dict[str, Mosaic] = {}
    grids = 0
    for width in range(4, _N + 1):
        for grid in _shell_grids(width):
            grids += 1
            found.setdefault(layout_key(grid), grid)
    shells = tuple(
        parse_mosaic(key) for key in sorted(found) if _has_corner_option(found[key])
    )
    logger.info(
        "Outer shells: %d grids, %d distinct, %d with a corner option",
        grids,
        len(found),
        len(shells),
    )
    return shells


def outer_shells() -> list[Mosaic]:
    """
    Distinct outer shells (two outermost rows and columns) of a
    space-efficient 7-mosaic, in canonical orientation.

    Every row is occupied, the extreme rows and columns hold only caps
    enclosing X4 cells, and each cut between rows other than the first two
    and the last two can meet at least four connection points. One corner
    must be a first-two-rows-and-columns option. Whether the inner block
    can be completed is not considered; inner cells are blank.
    """
    return list(_shells())


def _inner_block(shell: Mosaic) -> list[Position]:
    r0, r1, c0, c1 = occupied_bounds(shell) or (0, shell.n - 1, 0, shell.n - 1)
    return [(r, c) for r in range(r0 + 2, r1 - 1) for c in range(c0 + 2, c1 - 1)]


def _completions(shell: Mosaic) -> Iterator[Mosaic]:
    """Fillings of the inner block that pass every layout check."""
    inner = _inner_block(shell)
    lower, _ = tile_bounds(_N)
    cells: dict[Position, Cell] = {}

    def fits(position: Position, cell: Cell) -> bool:
        r, c = position
        points = _POINTS[cell]
        above = cells.get((r - 1, c), shell[(r - 1, c)])
        left = cells.get((r, c - 1), shell[(r, c - 1)])
        return (Side.BOTTOM in _POINTS[above]) == (Side.TOP in points) and (
            Side.RIGHT in _POINTS[left]
        ) == (Side.LEFT in points)

    def extend(index: int) -> Iterator[Mosaic]:
        if index == len(inner):
            grid = shell.with_cells(cells)
            if (
                _cells_join(grid)
                and _all_caps_supported(grid)
                and _passes_global_checks(grid, lower)
            ):
                yield grid
            return
        position = inner[index]
        for cell in _INNER_TILES:
            if fits(position, cell):
                cells[position] = cell
                yield from extend(index + 1)
                del cells[position]

    yield from extend(0)


def _four_point_count(m: Mosaic) -> int:
    return sum(1 for p in m.positions() if m[p] == X4)


@dataclass
class _Derivation:
    shells: tuple[Mosaic, ...] = ()
    completions: dict[str, list[Mosaic]] = field(default_factory=dict)


@lru_cache(maxsize=1)
def _derivation() -> _Derivation:
    """Completions of each outer shell with the most X4 cells."""
    result = _Derivation(shells=_shells())
    for shell in result.shells:
        grids = list(_completions(shell))
        best = max((_four_point_count(grid) for grid in grids), default=-1)
        result.completions[serialize(shell)] = [
            grid for grid in grids if _four_point_count(grid) == best
        ]
    empty = sum(1 for grids in result.completions.values() if not grids)
    logger.info(
        "Layout derivation: %d outer shells, %d without a completion",
        len(result.shells),
        empty,
    )
    return result


def _fill_double_arcs(m: Mosaic) -> Mosaic:
    return m.with_cells({p: Tile.T7 for p in m.positions() if isinstance(m[p], NTile)})


def _reduces(m: Mosaic) -> bool:
    filled = _fill_double_arcs(m)
    return reduce(filled).mosaic.non_blank_count < filled.non_blank_count


def derive_layouts() -> list[Layout]:
    """
    Regenerate the layout catalog.

    Each outer shell is completed with as many four-point cells as
    possible; completions needing segment tiles, or whose double-arc
    filling the reducer shrinks, are dropped. Layouts are deduplicated up
    to symmetry and translation.
    """
    derivation = _derivation()
    found: dict[str, Mosaic] = {}
    for shell_key in sorted(derivation.completions):
        for grid in derivation.completions[shell_key]:
            if any(grid[p] in (Tile.T5, Tile.T6) for p in grid.positions()):
                continue
            key = layout_key(grid)
            if key in found:
                continue
            if _reduces(grid):
                logger.debug("Dropped reducible completion\n%s", key)
                continue
            found[key] = parse_mosaic(key)

    ordered = sorted(found.items(), key=lambda item: (item[1].non_blank_count, item[0]))
    layouts = [
        Layout(f"derived-{i}", mosaic, mosaic.non_blank_count)
        for i, (_, mosaic) in enumerate(ordered, start=1)
    ]
    logger.info("Derived %d layouts", len(layouts))
    return layouts
