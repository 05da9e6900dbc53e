"""
Unit Tests for the Survey Pipeline.

Tests for layout fills, crossing assignment, pruning and survey reports.
"""

import json
from pathlib import Path

from knotmosaic.invariants import fingerprint, to_diagram_code
from knotmosaic.layouts import Layout
from knotmosaic.mosaic import Mosaic, canonical_key, parse_mosaic
from knotmosaic.moves import reduce
from knotmosaic.search import (
    MOSAIC_SEVEN_KNOTS,
    MOSAIC_SIX_KNOTS,
    SMALLEST_LAYOUTS,
    TILE_NUMBER_27_KNOTS,
    SurveyReport,
    SurveyResult,
    alternating_assignments,
    assign_crossings,
    enumerate_fills,
    fill_assignments,
    prune,
    stand_in,
    write_jsonl,
)
from knotmosaic.tiles import XC, Tile

TWO_CIRCLES = """
2 1 2 1
3 4 3 4
0 0 0 0
0 0 0 0
"""

TWISTED_BAND = """
2 1 2 1
3 9 9 4
0 3 4 0
0 0 0 0
"""

GRANNY = """
0 2 1 0 0 2 1 0
2 9 10 5 5 9 10 1
3 10 8 5 5 10 8 4
0 3 4 0 0 3 4 0
0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0
"""

KINKED_TREFOIL = """
0 0 0 2 1 0
0 0 2 9 4 0
0 2 9 10 1 0
0 3 10 8 4 0
0 0 3 4 0 0
0 0 0 0 0 0
"""


def trefoil_shadow(layout: Layout) -> Mosaic:
    return layout.mosaic.with_cells(
        {(1, 1): XC, (1, 2): XC, (2, 1): XC, (2, 2): Tile.T8}
    )


def result_for(m: Mosaic, name: str, flags: tuple = ()) -> SurveyResult:
    return SurveyResult(
        mosaic=m,
        knots=(name,),
        fingerprint=fingerprint(to_diagram_code(m)),
        tiles=m.non_blank_count,
        crossings=len(m.crossing_cells()),
        layout="small",
        flags=flags,
    )


class TestExpectedSets:
    """Tests for the published knot sets."""

    def test_sizes(self) -> None:
        """Five knots from 6-mosaics and fifty-five new on 7-mosaics."""
        assert len(MOSAIC_SIX_KNOTS) == 5
        assert len(MOSAIC_SEVEN_KNOTS) == 55
        assert len(TILE_NUMBER_27_KNOTS) == 60

    def test_smallest_layouts(self) -> None:
        """The 27-tile layouts."""
        assert SMALLEST_LAYOUTS == ("27a", "27b", "27c")


class TestFillAssignments:
    """Tests for interior fills."""

    def test_all_fills(self, small_layout: Layout) -> None:
        """Four free cells with three choices each."""
        assert len(list(fill_assignments(small_layout, 0))) == 81

    def test_min_crossings(self, small_layout: Layout) -> None:
        """Fills below the crossing minimum are skipped."""
        fills = list(fill_assignments(small_layout, 3))
        assert len(fills) == 9
        assert all(fill.crossings >= 3 for fill in fills)

    def test_all_crossings(self, small_layout: Layout) -> None:
        """Only one fill puts a crossing in every cell."""
        (fill,) = fill_assignments(small_layout, 4)
        assert fill.apply(small_layout).crossing_cells() == [
            (1, 1),
            (1, 2),
            (2, 1),
            (2, 2),
        ]

    def test_stand_in(self, small_layout: Layout) -> None:
        """Crossing domains trace as T9."""
        shadow = stand_in(trefoil_shadow(small_layout))
        assert shadow.is_deterministic
        assert shadow[1, 1] == Tile.T9

    def test_shadows_distinct(self, small_layout: Layout) -> None:
        """Symmetric fills collapse to one shadow."""
        shadows = list(enumerate_fills(small_layout, 0, prune_shadows=False))
        keys = [canonical_key(s) for s in shadows]
        assert len(set(keys)) == len(keys)
        assert len(shadows) < 81

    def test_shadows_min_crossings(self, small_layout: Layout) -> None:
        """Only the all-crossing shadow has four crossings."""
        (shadow,) = enumerate_fills(small_layout, 4, prune_shadows=False)
        assert len(shadow.crossing_cells()) == 4


class TestAssignCrossings:
    """Tests for over/under assignment."""

    def test_alternating(self, small_layout: Layout, trefoil: Mosaic) -> None:
        """One alternating assignment of the shadow is the trefoil."""
        first, second = alternating_assignments(trefoil_shadow(small_layout))
        assert trefoil in (first, second)
        assert first != second

    def test_alternating_first(self, small_layout: Layout) -> None:
        """Alternating diagrams come first and duplicates are skipped."""
        shadow = trefoil_shadow(small_layout)
        results = list(assign_crossings(shadow))
        assert results[0] == alternating_assignments(shadow)[0]
        assert len(results) < 8
        keys = [canonical_key(m, mirror=True) for m in results]
        assert len(set(keys)) == len(keys)

    def test_mirror_dropped(self, small_layout: Layout) -> None:
        """The second alternating assignment is the mirror of the first."""
        shadow = trefoil_shadow(small_layout)
        results = list(assign_crossings(shadow))
        assert alternating_assignments(shadow)[1] not in results

    def test_no_crossings(self, unknot: Mosaic) -> None:
        """A crossingless shadow is its own only diagram."""
        assert list(assign_crossings(unknot)) == [unknot]


class TestPrune:
    """Tests for the prune decisions."""

    def test_keep_trefoil(self, trefoil: Mosaic) -> None:
        """The trefoil survives."""
        assert prune(trefoil).keep

    def test_link(self) -> None:
        """Two circles are a link with two strands."""
        decision = prune(parse_mosaic(TWO_CIRCLES))
        assert not decision.keep
        assert decision.reason == "link"
        assert decision.witness == 2

    def test_composite(self) -> None:
        """A straight cut through two points marks a composite."""
        decision = prune(parse_mosaic(TWISTED_BAND))
        assert decision.reason == "composite"

    def test_reducible(self, kinked_unknot: Mosaic) -> None:
        """A removable twist marks the diagram reducible."""
        decision = prune(kinked_unknot)
        assert decision.reason == "reducible"
        assert decision.witness

    def test_granny(self) -> None:
        """Two trefoils joined side by side are cut apart."""
        m = parse_mosaic(GRANNY)
        assert len(m.crossing_cells()) == 6
        assert fingerprint(to_diagram_code(m)).determinant == 9
        decision = prune(m)
        assert not decision.keep
        assert decision.reason == "composite"

    def test_kinked_trefoil(self, trefoil: Mosaic) -> None:
        """A kink on a trefoil is pruned and reduces away."""
        m = parse_mosaic(KINKED_TREFOIL)
        assert not prune(m).keep
        result = reduce(m)
        assert result.mosaic.non_blank_count == trefoil.non_blank_count
        assert len(result.mosaic.crossing_cells()) == 3
        before = fingerprint(to_diagram_code(m))
        after = fingerprint(to_diagram_code(result.mosaic))
        assert after.key == before.key
        assert after.key == fingerprint(to_diagram_code(trefoil)).key


class TestReport:
    """Tests for survey reports and their output."""

    def test_names_and_flags(self, trefoil: Mosaic, unknot: Mosaic) -> None:
        """Flagged results are kept apart from plain names."""
        report = SurveyReport(
            results={
                "3_1": result_for(trefoil, "3_1"),
                "0_1": result_for(unknot, "0_1", ("low-crossing",)),
            }
        )
        assert report.names() == {"3_1"}
        assert report.flagged("low-crossing") == {"0_1"}
        assert [r.knots[0] for r in report.all_results()] == ["0_1", "3_1"]

    def test_as_dict(self, trefoil: Mosaic) -> None:
        """Results serialize with their invariants."""
        record = result_for(trefoil, "3_1").as_dict()
        assert record["knot"] == "3_1"
        assert record["tiles"] == 12
        assert record["crossings"] == 3
        assert record["determinant"] == 3
        assert record["mosaic"][0] == "0 2 1 0"

    def test_write_jsonl(self, tmp_path: Path, trefoil: Mosaic) -> None:
        """One JSON object per line."""
        report = SurveyReport(results={"3_1": result_for(trefoil, "3_1")})
        path = tmp_path / "survey.jsonl"
        write_jsonl(report, path)
        lines = path.read_text().splitlines()
        assert len(lines) == 1
        assert json.loads(lines[0])["knot"] == "3_1"
