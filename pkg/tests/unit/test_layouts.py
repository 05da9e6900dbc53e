"""
Unit Tests for Layouts.

Tests for tile-number bounds, the layout catalog, layout filling and the
corner building blocks.
"""

from pathlib import Path

import numpy as np
import pytest

from knotmosaic.errors import MosaicParseError
from knotmosaic.layouts import (
    Layout,
    building_blocks,
    fill_layout,
    get_layout,
    layout_catalog,
    layout_key,
    tile_bounds,
)
from knotmosaic.mosaic import (
    canonical_form,
    canonical_key,
    component_count,
    is_suitably_connected,
    serialize,
    transform,
)
from knotmosaic.moves import local_space_efficiency_report
from knotmosaic.tiles import DIAGRAM_GROUP, SQUARE_GROUP, X4, Tile

CATALOG_IDS = [
    "27a", "27b", "27c", "29", "31", "32a", "32b", "32c",
    "34a", "34b", "34c", "36", "37a", "37b", "39", "41",
]  # fmt: skip


class TestTileBounds:
    """Tests for the space-efficient tile-count bounds."""

    @pytest.mark.parametrize(
        "n, expected",
        [
            (4, (12, 12)),
            (5, (17, 17)),
            (6, (22, 32)),
            (7, (27, 41)),
            (8, (32, 60)),
            (9, (37, 73)),
        ],
    )
    def test_bounds(self, n: int, expected: tuple[int, int]) -> None:
        """Lower bound 5n - 8; upper n^2 - 4 (even) or n^2 - 8 (odd)."""
        assert tile_bounds(n) == expected

    def test_small_n(self) -> None:
        """Mosaics below size 4 hold no nontrivial knot."""
        with pytest.raises(ValueError):
            tile_bounds(3)


class TestCatalog:
    """Tests for the shipped layout catalog."""

    def test_ids(self) -> None:
        """Sixteen layouts ordered by tile count."""
        assert [layout.id for layout in layout_catalog()] == CATALOG_IDS

    def test_counts(self) -> None:
        """Tile counts run from 27 to 41."""
        counts = {layout.count for layout in layout_catalog()}
        assert counts == {27, 29, 31, 32, 34, 36, 37, 39, 41}

    def test_within_bounds(self) -> None:
        """Every layout is a 7-mosaic within the tile bounds."""
        low, high = tile_bounds(7)
        for layout in layout_catalog():
            assert layout.n == 7
            assert low <= layout.count <= high

    def test_connected(self) -> None:
        """Every layout is suitably connected."""
        for layout in layout_catalog():
            assert is_suitably_connected(layout.mosaic) is None, layout.id

    def test_distinct(self) -> None:
        """No two layouts are symmetric images of each other."""
        keys = {layout_key(layout.mosaic) for layout in layout_catalog()}
        assert len(keys) == len(CATALOG_IDS)

    def test_fills_pass_local_checks(self) -> None:
        """Any filling of a layout is suitably connected and space-efficient."""
        rng = np.random.default_rng(5)
        choices = (Tile.T7, Tile.T8, Tile.T9, Tile.T10)
        for layout in layout_catalog():
            filled = fill_layout(
                layout,
                {p: choices[rng.integers(4)] for p in layout.interior_cells()},
            )
            assert filled.is_deterministic
            assert is_suitably_connected(filled) is None, layout.id
            assert local_space_efficiency_report(filled) == [], layout.id

    def test_blocks_fit_first_layout(self) -> None:
        """Every building block drops into both block regions of 27a."""
        layout = get_layout("27a")
        interior = set(layout.interior_cells())
        for r0, c0 in layout.blocks:
            g = layout.block_orientation((r0, c0))
            for block in building_blocks():
                placed = {
                    (r0 + r, c0 + c): cell for (r, c), cell in block.cells(g).items()
                }
                assert len(placed) == 4
                assert set(placed) <= interior
                filled = fill_layout(layout, placed)
                assert all(filled[p] == cell for p, cell in placed.items())

    def test_asymmetric_serializations(self) -> None:
        """A mosaic with no symmetry has eight distinct images."""
        layout = get_layout("27a")
        choices = {p: Tile.T9 for p in layout.interior_cells()}
        choices[(1, 2)] = Tile.T7
        m = fill_layout(layout, choices)
        images = [transform(m, g) for g in SQUARE_GROUP]
        assert len({serialize(image) for image in images}) == 8
        assert {serialize(canonical_form(image)) for image in images} == {
            canonical_key(m)
        }

    def test_get_layout(self) -> None:
        """Layouts are looked up by id."""
        layout = get_layout("27a")
        assert layout.count == 27
        assert layout.blocks == ((0, 0), (4, 4))
        assert len(layout.interior_cells()) == 13

    def test_unknown_layout(self) -> None:
        """Unknown ids raise KeyError."""
        with pytest.raises(KeyError):
            get_layout("28")

    def test_invalid_toml(self, tmp_path: Path) -> None:
        """Broken catalog files are parse errors."""
        path = tmp_path / "broken.toml"
        path.write_text("[[layout]\n")
        with pytest.raises(MosaicParseError):
            layout_catalog(path)

    def test_missing_field(self, tmp_path: Path) -> None:
        """Entries need an id, a count and a grid."""
        path = tmp_path / "partial.toml"
        path.write_text('[[layout]]\nid = "x"\ngrid = ". 2 1\\n2 X 4\\n3 4 ."\n')
        with pytest.raises(MosaicParseError):
            layout_catalog(path)


class TestLayout:
    """Tests for building and filling layouts."""

    def test_from_text(self, small_layout: Layout) -> None:
        """Dots are blanks and X marks four-point cells."""
        assert small_layout.n == 4
        assert small_layout.count == 12
        assert small_layout.interior_cells() == [(1, 1), (1, 2), (2, 1), (2, 2)]
        assert small_layout.mosaic[1, 1] == X4

    def test_wrong_count(self) -> None:
        """The declared count must match the grid."""
        with pytest.raises(MosaicParseError):
            Layout.from_text(". 2 1 .\n2 X X 1\n3 X X 4\n. 3 4 .", count=13)

    def test_block_outside_corner(self) -> None:
        """Block anchors must sit on a corner region."""
        with pytest.raises(MosaicParseError):
            Layout.from_text(". 2 1 .\n2 X X 1\n3 X X 4\n. 3 4 .", blocks=((2, 2),))

    def test_fill(self, small_layout: Layout) -> None:
        """Filling the interior with crossings gives the trefoil grid."""
        m = fill_layout(
            small_layout,
            {(1, 1): Tile.T9, (1, 2): Tile.T10, (2, 1): Tile.T10, (2, 2): Tile.T8},
        )
        assert m.is_deterministic
        assert component_count(m) == 1

    def test_partial_fill(self, small_layout: Layout) -> None:
        """Unnamed interior cells keep their domain."""
        m = fill_layout(small_layout, {(1, 1): Tile.T9})
        assert m[1, 2] == X4
        assert not m.is_deterministic

    def test_fill_boundary(self, small_layout: Layout) -> None:
        """Boundary cells cannot be filled."""
        with pytest.raises(ValueError):
            fill_layout(small_layout, {(0, 1): Tile.T9})

    def test_fill_two_point_tile(self, small_layout: Layout) -> None:
        """Interior cells need four connection points."""
        with pytest.raises(ValueError):
            fill_layout(small_layout, {(1, 1): Tile.T5})

    def test_layout_key_symmetric(self) -> None:
        """The key ignores rotations, reflections and the mirror."""
        m = get_layout("29").mosaic
        for g in DIAGRAM_GROUP:
            assert layout_key(transform(m, g)) == layout_key(m)

    def test_block_orientation(self) -> None:
        """The lower-right block of 27a is the template turned half way."""
        g = get_layout("27a").block_orientation((4, 4))
        assert g in SQUARE_GROUP
        assert g.quarter_turns == 2 or g.reflected


class TestBuildingBlocks:
    """Tests for the corner building blocks."""

    def test_crossing_counts(self) -> None:
        """Blocks carry two to four crossings."""
        blocks = building_blocks()
        assert blocks
        assert {block.crossings for block in blocks} <= {2, 3, 4}

    def test_full_crossing_block(self) -> None:
        """Four crossings in the corner is a valid block."""
        assert any(block.crossings == 4 for block in building_blocks())

    def test_cells_follow_orientation(self) -> None:
        """Cells turn with the region onto its four-point positions."""
        layout = get_layout("27a")
        g = layout.block_orientation((4, 4))
        cells = building_blocks()[0].cells(g)
        assert set(cells) == {(0, 0), (0, 1), (1, 0), (1, 1)}
