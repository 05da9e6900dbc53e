"""
Unit Tests for Rendering.

Tests for the terminal and SVG drawings.
"""

from knotmosaic.layouts import Layout
from knotmosaic.mosaic import Mosaic
from knotmosaic.render import render_ascii, render_svg, tile_elements
from knotmosaic.tiles import XC, Tile


class TestRenderAscii:
    """Tests for terminal drawings."""

    def test_unknot(self, unknot: Mosaic) -> None:
        """The smallest unknot draws as a diamond."""
        assert render_ascii(unknot).splitlines() == [
            "",
            "  /\\",
            " /  \\",
            " \\  /",
            "  \\/",
            "",
        ]

    def test_three_lines_per_row(self, trefoil: Mosaic) -> None:
        """Each tile row takes three lines."""
        text = render_ascii(trefoil)
        assert text.endswith("\n")
        assert len(text.splitlines()) == 12

    def test_crossings(self, trefoil: Mosaic) -> None:
        """T9 draws its horizontal strand through the centre, T10 its vertical."""
        lines = render_ascii(trefoil).splitlines()
        assert lines[4][3:9] == "----|-"

    def test_domains(self, small_layout: Layout) -> None:
        """Undetermined cells draw as labelled boxes."""
        text = render_ascii(small_layout.mosaic)
        assert "|4||4|" in text


class TestRenderSvg:
    """Tests for SVG drawings."""

    def test_document(self, trefoil: Mosaic) -> None:
        """A square document sized to the mosaic."""
        svg = render_svg(trefoil)
        assert "<svg" in svg
        assert "160" in svg

    def test_grid(self, trefoil: Mosaic) -> None:
        """The grid option outlines every cell."""
        assert render_svg(trefoil, grid=True).count("#dddddd") == 16
        assert "#dddddd" not in render_svg(trefoil)

    def test_domain_label(self, small_layout: Layout) -> None:
        """Undetermined cells carry their token."""
        assert "X4" in render_svg(small_layout.mosaic)

    def test_tile_elements(self) -> None:
        """Blanks draw nothing; crossings draw the over strand and two halves."""
        assert tile_elements(Tile.T0, 0, 0) == []
        assert len(tile_elements(Tile.T9, 0, 0)) == 3
        assert len(tile_elements(Tile.T7, 0, 0)) == 2
        assert len(tile_elements(Tile.T5, 0, 0)) == 1
        assert len(tile_elements(XC, 0, 0)) == 2
