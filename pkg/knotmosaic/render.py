"""
Render

Terminal and SVG drawings of mosaics and shadows.

Each tile becomes a 3x3 block of characters for the terminal, or a square
of quarter-circle arcs and straight segments in SVG. Under-strands at
crossings are drawn with a gap; undetermined cells are drawn as a labelled
box.
"""

import drawsvg as draw

from knotmosaic.mosaic import Mosaic
from knotmosaic.tiles import Cell, NTile, Side, Tile, connection_pairs

_GLYPHS: dict[Tile, tuple[str, str, str]] = {
    Tile.T0: ("   ", "   ", "   "),
    Tile.T1: ("   ", "\\  ", " \\ "),
    Tile.T2: ("   ", "  /", " / "),
    Tile.T3: (" \\ ", "  \\", "   "),
    Tile.T4: (" / ", "/  ", "   "),
    Tile.T5: ("   ", "---", "   "),
    Tile.T6: (" | ", " | ", " | "),
    Tile.T7: (" \\ ", "\\ \\", " \\ "),
    Tile.T8: (" / ", "/ /", " / "),
    # the strand drawn through the centre is the over-strand
    Tile.T9: (" | ", "---", " | "),
    Tile.T10: (" | ", "-|-", " | "),
}

CELL_SIZE = 40
STROKE_WIDTH = 3
# fraction of the cell left open on each side of an over-strand
GAP_RATIO = 0.15


def _glyph(cell: Cell) -> tuple[str, str, str]:
    if isinstance(cell, NTile):
        label = "S" if cell.token.startswith("XS") else cell.token[1]
        return ("+-+", f"|{label}|", "+-+")
    return _GLYPHS[cell]


def render_ascii(m: Mosaic) -> str:
    """
    Draw a mosaic with three rows of three characters per tile.

    Undetermined cells appear as a small box labelled with the last
    character of their domain token (4 for X4, C for XC, S for XS).
    """
    lines: list[str] = []
    for row in m.cells:
        glyphs = [_glyph(cell) for cell in row]
        for k in range(3):
            lines.append("".join(g[k] for g in glyphs).rstrip())
    return "\n".join(lines) + "\n"


def _midpoint(x: float, y: float, side: Side) -> tuple[float, float]:
    half = CELL_SIZE / 2
    return {
        Side.TOP: (x + half, y),
        Side.RIGHT: (x + CELL_SIZE, y + half),
        Side.BOTTOM: (x + half, y + CELL_SIZE),
        Side.LEFT: (x, y + half),
    }[side]


def _corner(x: float, y: float, a: Side, b: Side) -> tuple[float, float]:
    sides = {a, b}
    cx = x + CELL_SIZE if Side.RIGHT in sides else x
    cy = y + CELL_SIZE if Side.BOTTOM in sides else y
    return cx, cy


def _arc(x: float, y: float, a: Side, b: Side) -> draw.Path:
    sx, sy = _midpoint(x, y, a)
    ex, ey = _midpoint(x, y, b)
    cx, cy = _corner(x, y, a, b)
    # positive cross product runs clockwise on screen
    sweep = 1 if (sx - cx) * (ey - cy) - (sy - cy) * (ex - cx) > 0 else 0
    radius = CELL_SIZE / 2
    path = draw.Path(stroke="black", stroke_width=STROKE_WIDTH, fill="none")
    path.M(sx, sy).A(radius, radius, 0, 0, sweep, ex, ey)
    return path


def _line(start: tuple[float, float], end: tuple[float, float]) -> draw.Line:
    return draw.Line(
        *start, *end, stroke="black", stroke_width=STROKE_WIDTH, fill="none"
    )


def _crossing(x: float, y: float, tile: Tile) -> list[draw.DrawingElement]:
    horizontal = (_midpoint(x, y, Side.LEFT), _midpoint(x, y, Side.RIGHT))
    vertical = (_midpoint(x, y, Side.TOP), _midpoint(x, y, Side.BOTTOM))
    if tile == Tile.T9:
        over, under = horizontal, vertical
    else:
        over, under = vertical, horizontal
    (ux0, uy0), (ux1, uy1) = under
    mx, my = (ux0 + ux1) / 2, (uy0 + uy1) / 2
    gap = CELL_SIZE * GAP_RATIO
    dx = 0.0 if ux0 == ux1 else gap
    dy = 0.0 if uy0 == uy1 else gap
    return [
        _line(*over),
        _line((ux0, uy0), (mx - dx, my - dy)),
        _line((mx + dx, my + dy), (ux1, uy1)),
    ]


def _undetermined(x: float, y: float, cell: NTile) -> list[draw.DrawingElement]:
    inset = CELL_SIZE * 0.1
    return [
        draw.Rectangle(
            x + inset,
            y + inset,
            CELL_SIZE - 2 * inset,
            CELL_SIZE - 2 * inset,
            stroke="gray",
            stroke_width=1,
            stroke_dasharray="3,2",
            fill="none",
        ),
        draw.Text(
            cell.token,
            CELL_SIZE * 0.3,
            x + CELL_SIZE / 2,
            y + CELL_SIZE / 2,
            text_anchor="middle",
            dominant_baseline="central",
            fill="gray",
        ),
    ]


def tile_elements(cell: Cell, x: float, y: float) -> list[draw.DrawingElement]:
    """Return the SVG elements drawing one cell with its top-left at (x, y)."""
    if isinstance(cell, NTile):
        return _undetermined(x, y, cell)
    if cell.is_crossing:
        return _crossing(x, y, cell)
    elements: list[draw.DrawingElement] = []
    for a, b in connection_pairs(cell):
        if a.opposite == b:
            elements.append(_line(_midpoint(x, y, a), _midpoint(x, y, b)))
        else:
            elements.append(_arc(x, y, a, b))
    return elements


def render_svg(m: Mosaic, grid: bool = False) -> str:
    """
    Draw a mosaic as an SVG document.

    Args:
        m: Mosaic or shadow to draw
        grid: Also draw the faint tile boundaries

    Returns:
        The SVG document text
    """
    size = m.n * CELL_SIZE
    d = draw.Drawing(size, size)
    d.append(draw.Rectangle(0, 0, size, size, fill="white"))
    for r, c in m.positions():
        x, y = c * CELL_SIZE, r * CELL_SIZE
        if grid:
            d.append(
                draw.Rectangle(
                    x,
                    y,
                    CELL_SIZE,
                    CELL_SIZE,
                    stroke="#dddddd",
                    stroke_width=1,
                    fill="none",
                )
            )
        for element in tile_elements(m[r, c], x, y):
            d.append(element)
    return d.as_svg()
