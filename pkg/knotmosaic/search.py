"""
Survey Search

Fills layout interiors with double arcs and crossings, assigns over/under
information, prunes links, composites and reducible diagrams, removes
symmetric duplicates and identifies what survives against the knot table.

Link, composite and reducibility checks only depend on the shadow, so
they run once per shadow before crossing information is assigned.
"""

import json
import logging
from dataclasses import dataclass, field
from itertools import chain, product
from multiprocessing import Pool
from pathlib import Path
from typing import Iterable, Iterator, Literal

from knotmosaic.core.config import get_settings
from knotmosaic.errors import DiagramCodeError
from knotmosaic.invariants import (
    Fingerprint,
    fingerprint,
    is_connected_sum,
    to_diagram_code,
)
from knotmosaic.knottable import FingerprintKey, KnotTable, identify
from knotmosaic.layouts import Layout, building_blocks, get_layout
from knotmosaic.mosaic import (
    CutWitness,
    Mosaic,
    Position,
    canonical_key,
    parse_mosaic,
    serialize,
    straight_cut_split,
    trace,
)
from knotmosaic.moves import MoveApplication, reduce, score
from knotmosaic.tiles import XC, Cell, NTile, Side, Tile

logger = logging.getLogger(__name__)

PruneReason = Literal["link", "composite", "reducible"]
Flag = Literal["unidentified", "ambiguous", "excluded", "low-crossing"]

SMALLEST_LAYOUTS: tuple[str, ...] = ("27a", "27b", "27c")

# Knots of at least nine crossings realized on the 27-tile layouts.
# Mosaic number 6 with minimal mosaic tile number 32:
MOSAIC_SIX_KNOTS: frozenset[str] = frozenset(
    {"9_10", "10_11", "10_20", "10_21", "11a341"}
)
# Mosaic number 7 and tile number 27:
MOSAIC_SEVEN_KNOTS: frozenset[str] = frozenset(
    {
        "9_6", "9_15", "9_18",
        "10_5", "10_6", "10_7", "10_8", "10_9", "10_10", "10_13", "10_14",
        "10_15", "10_16", "10_17", "10_18", "10_19", "10_24", "10_25",
        "10_26", "10_29", "10_30", "10_31", "10_32", "10_33", "10_35",
        "10_36", "10_38", "10_39",
        "11a90", "11a93", "11a119", "11a145", "11a180", "11a184", "11a185",
        "11a192", "11a203", "11a205", "11a210", "11a226", "11a306",
        "11a307", "11a308", "11a309", "11a311", "11a333", "11a336",
        "11a337", "11a363",
        "12a541", "12a601", "12a1024", "12a1034", "12a1126",
        "13a4304",
    }
)  # fmt: skip
TILE_NUMBER_27_KNOTS: frozenset[str] = MOSAIC_SIX_KNOTS | MOSAIC_SEVEN_KNOTS

_FREE_CHOICES: tuple[Cell, ...] = (Tile.T7, Tile.T8, XC)


@dataclass(frozen=True)
class FillAssignment:
    """
    Interior choices for one layout.

    Attributes:
        layout: Layout id
        cells: (position, choice) per interior cell, row-major; a choice is
            T7, T8 or XC
    """

    layout: str
    cells: tuple[tuple[Position, Cell], ...]

    @property
    def crossings(self) -> int:
        return sum(1 for _, cell in self.cells if cell == XC)

    def apply(self, layout: Layout) -> Mosaic:
        return layout.mosaic.with_cells(dict(self.cells))


def fill_assignments(layout: Layout, min_crossings: int) -> Iterator[FillAssignment]:
    """
    Interior assignments with at least `min_crossings` crossing cells.

    Block regions take their cells from the oriented building blocks;
    every other interior cell is T7, T8 or XC.
    """
    blocks = building_blocks()
    block_options: list[list[dict[Position, Cell]]] = []
    covered: set[Position] = set()
    for r0, c0 in layout.blocks:
        g = layout.block_orientation((r0, c0))
        options = [
            {(r0 + r, c0 + c): cell for (r, c), cell in block.cells(g).items()}
            for block in blocks
        ]
        block_options.append(options)
        covered.update(options[0])

    free = [p for p in layout.interior_cells() if p not in covered]
    for chosen_blocks in product(*block_options):
        fixed: dict[Position, Cell] = {}
        for cells in chosen_blocks:
            fixed.update(cells)
        fixed_crossings = sum(1 for cell in fixed.values() if cell == XC)
        if fixed_crossings + len(free) < min_crossings:
            continue
        for choice in product(_FREE_CHOICES, repeat=len(free)):
            crossings = fixed_crossings + sum(1 for cell in choice if cell == XC)
            if crossings < min_crossings:
                continue
            cells = {**fixed, **dict(zip(free, choice))}
            yield FillAssignment(layout.id, tuple(sorted(cells.items())))


def stand_in(shadow: Mosaic) -> Mosaic:
    """Replace crossing domains by T9 so the shadow can be traced."""
    return shadow.with_cells(
        {p: Tile.T9 for p in shadow.positions() if isinstance(shadow[p], NTile)}
    )


def enumerate_fills(
    layout: Layout, min_crossings: int, prune_shadows: bool = True
) -> Iterator[Mosaic]:
    """
    Distinct shadows of a layout with at least `min_crossings` crossings.

    Shadows are compared up to the square symmetries; with
    `prune_shadows`, links, composites and reducible shadows are dropped.
    """
    seen: set[str] = set()
    emitted = 0
    for assignment in fill_assignments(layout, min_crossings):
        shadow = assignment.apply(layout)
        key = canonical_key(shadow)
        if key in seen:
            continue
        seen.add(key)
        if prune_shadows:
            decision = prune(stand_in(shadow))
            if not decision.keep:
                logger.debug("Shadow pruned (%s)", decision.reason)
                continue
        emitted += 1
        yield shadow
    logger.info("Layout %s: %d shadows emitted", layout.id, emitted)


def _alternating(shadow: Mosaic, first_over: bool) -> Mosaic:
    strands = trace(stand_in(shadow))
    if len(strands) != 1:
        raise DiagramCodeError(f"shadow has {len(strands)} components, expected 1")
    updates: dict[Position, Cell] = {}
    want_over = first_over
    for step in strands[0].crossing_visits():
        if step.position not in updates:
            horizontal = step.entry in (Side.LEFT, Side.RIGHT)
            updates[step.position] = Tile.T9 if horizontal == want_over else Tile.T10
        want_over = not want_over
    return shadow.with_cells(updates)


def alternating_assignments(shadow: Mosaic) -> tuple[Mosaic, Mosaic]:
    """
    The two alternating crossing assignments of a one-component shadow.

    Raises:
        DiagramCodeError: If the shadow traces to more than one component.
    """
    return _alternating(shadow, True), _alternating(shadow, False)


def assign_crossings(shadow: Mosaic) -> Iterator[Mosaic]:
    """
    Knot mosaics over a shadow: both alternating assignments first, then
    every assignment, skipping diagrams equivalent up to symmetry and
    global mirror to one already produced.

    Raises:
        DiagramCodeError: If the shadow traces to more than one component.
    """
    crossings = [p for p in shadow.positions() if isinstance(shadow[p], NTile)]
    candidates: Iterable[Mosaic]
    if not crossings:
        if len(trace(shadow)) != 1:
            raise DiagramCodeError("shadow has more than one component")
        candidates = [shadow]
    else:
        every = (
            shadow.with_cells(dict(zip(crossings, choice)))
            for choice in product((Tile.T9, Tile.T10), repeat=len(crossings))
        )
        candidates = chain(alternating_assignments(shadow), every)

    seen: set[str] = set()
    for m in candidates:
        key = canonical_key(m, mirror=True)
        if key not in seen:
            seen.add(key)
            yield m


@dataclass(frozen=True)
class PruneDecision:
    """
    Keep or discard verdict for one diagram.

    Attributes:
        keep: The diagram survives
        reason: Why it was discarded
        witness: Strand count, cut line, Gauss text or move sequence
    """

    keep: bool
    reason: PruneReason | None = None
    witness: int | str | CutWitness | tuple[MoveApplication, ...] | None = None


KEEP = PruneDecision(True)


def prune(m: Mosaic) -> PruneDecision:
    """
    Classify a knot mosaic as a link, composite, reducible, or kept.

    Args:
        m: Deterministic, suitably connected mosaic
    """
    strands = trace(m)
    if len(strands) > 1:
        return PruneDecision(False, "link", len(strands))

    cut = straight_cut_split(m)
    if cut is not None:
        return PruneDecision(False, "composite", cut)
    code = to_diagram_code(m)
    if is_connected_sum(code):
        return PruneDecision(False, "composite", code.to_gauss_text())

    result = reduce(m)
    if score(result.mosaic) < score(m):
        return PruneDecision(False, "reducible", result.steps)
    return KEEP


@dataclass(frozen=True)
class SurveyResult:
    """
    One identified diagram.

    Attributes:
        mosaic: Canonical knot mosaic
        knots: Table names sharing the fingerprint
        fingerprint: Invariants of the diagram
        tiles: Non-blank tile count
        crossings: Crossing tile count
        layout: Layout id the diagram came from
        flags: Reporting flags
    """

    mosaic: Mosaic
    knots: tuple[str, ...]
    fingerprint: Fingerprint
    tiles: int
    crossings: int
    layout: str
    flags: tuple[Flag, ...] = ()

    def as_dict(self) -> dict:
        knot: str | list[str] = (
            self.knots[0] if len(self.knots) == 1 else list(self.knots)
        )
        return {
            "mosaic": serialize(self.mosaic).splitlines(),
            "knot": knot,
            "tiles": self.tiles,
            "crossings": self.crossings,
            **self.fingerprint.as_dict(),
            "layout": self.layout,
            "flags": list(self.flags),
        }


@dataclass
class SurveyReport:
    """
    Survey outcome.

    Attributes:
        results: First diagram found per identified knot name
        ambiguous: One diagram per fingerprint matching several names
        unidentified: One diagram per fingerprint matching no name
        shadow_counts: Shadows surviving pruning, per layout
    """

    results: dict[str, SurveyResult] = field(default_factory=dict)
    ambiguous: list[SurveyResult] = field(default_factory=list)
    unidentified: list[SurveyResult] = field(default_factory=list)
    shadow_counts: dict[str, int] = field(default_factory=dict)

    def names(self) -> set[str]:
        """Identified names that carry no flag."""
        return {name for name, result in self.results.items() if not result.flags}

    def flagged(self, flag: Flag) -> set[str]:
        return {name for name, result in self.results.items() if flag in result.flags}

    def all_results(self) -> list[SurveyResult]:
        ordered = [self.results[name] for name in sorted(self.results)]
        return ordered + self.ambiguous + self.unidentified


_FINGERPRINTS: dict[str, Fingerprint] = {}


def _diagrams_of_shadow(item: tuple[str, str]) -> list[tuple[str, str, Fingerprint]]:
    """Worker: canonical diagrams of one shadow with their fingerprints."""
    layout_id, text = item
    found: list[tuple[str, str, Fingerprint]] = []
    for m in assign_crossings(parse_mosaic(text)):
        key = canonical_key(m, mirror=True)
        fp = _FINGERPRINTS.get(key)
        if fp is None:
            fp = fingerprint(to_diagram_code(m))
            _FINGERPRINTS[key] = fp
        found.append((layout_id, key, fp))
    return found


def _iterate(items: list[tuple[str, str]], jobs: int) -> Iterator[list]:
    if jobs <= 1:
        for item in items:
            yield _diagrams_of_shadow(item)
        return
    with Pool(processes=jobs) as pool:
        yield from pool.imap_unordered(_diagrams_of_shadow, items, chunksize=8)


def run_survey(
    layout_ids: Iterable[str],
    table: KnotTable,
    min_crossings: int | None = None,
    exclusions: set[str] | None = None,
    jobs: int | None = None,
) -> SurveyReport:
    """
    Run the full pipeline over the given layouts.

    Args:
        layout_ids: Catalog ids to survey
        table: Reference knot table
        min_crossings: Minimum crossing cells per fill (settings default)
        exclusions: Names already realized on smaller mosaics; flagged
        jobs: Worker processes (settings default)

    Returns:
        Report with deterministic content regardless of `jobs`
    """
    settings = get_settings()
    minimum = settings.min_crossings if min_crossings is None else min_crossings
    workers = settings.jobs if jobs is None else jobs
    excluded = exclusions or set()

    report = SurveyReport()
    items: list[tuple[str, str]] = []
    for layout_id in layout_ids:
        layout = get_layout(layout_id)
        shadows = [serialize(s) for s in enumerate_fills(layout, minimum)]
        report.shadow_counts[layout.id] = len(shadows)
        items.extend((layout.id, text) for text in shadows)

    diagrams: dict[str, tuple[str, Fingerprint]] = {}
    for batch in _iterate(items, workers):
        for layout_id, key, fp in batch:
            previous = diagrams.get(key)
            if previous is None or layout_id < previous[0]:
                diagrams[key] = (layout_id, fp)

    by_fingerprint: dict[FingerprintKey, SurveyResult] = {}
    for key in sorted(diagrams, key=lambda k: (diagrams[k][0], k)):
        layout_id, fp = diagrams[key]
        result = _result(parse_mosaic(key), fp, layout_id, table, minimum, excluded)
        if "unidentified" in result.flags or "ambiguous" in result.flags:
            by_fingerprint.setdefault(fp.key, result)
        else:
            report.results.setdefault(result.knots[0], result)

    for result in sorted(by_fingerprint.values(), key=lambda r: serialize(r.mosaic)):
        if "ambiguous" in result.flags:
            logger.warning("Ambiguous fingerprint: %s", ", ".join(result.knots))
            report.ambiguous.append(result)
        else:
            logger.warning(
                "Unidentified fingerprint, jones %s",
                result.fingerprint.jones.serialize(),
            )
            report.unidentified.append(result)
    logger.info(
        "Survey done: %d diagrams, %d knots identified",
        len(diagrams),
        len(report.results),
    )
    return report


def _result(
    m: Mosaic,
    fp: Fingerprint,
    layout_id: str,
    table: KnotTable,
    minimum: int,
    excluded: set[str],
) -> SurveyResult:
    names = ["0_1"] if fp.is_unknot else identify(fp, table)
    flags: list[Flag] = []
    if not names:
        flags.append("unidentified")
    elif len(names) > 1:
        flags.append("ambiguous")
    else:
        name = names[0]
        crossing_number = 0 if name == "0_1" else table.crossing_number(name)
        if crossing_number is not None and crossing_number < minimum:
            flags.append("low-crossing")
        if name in excluded:
            flags.append("excluded")
    return SurveyResult(
        mosaic=m,
        knots=tuple(names),
        fingerprint=fp,
        tiles=m.non_blank_count,
        crossings=len(m.crossing_cells()),
        layout=layout_id,
        flags=tuple(flags),
    )


def write_jsonl(report: SurveyReport, path: Path) -> None:
    """Write one JSON object per result, in deterministic order."""
    lines = [
        json.dumps(result.as_dict(), sort_keys=True)
        for result in report.all_results()
    ]
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")
