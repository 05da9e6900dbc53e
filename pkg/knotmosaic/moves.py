"""
Mosaic Moves

Planar isotopy moves as rewrite rules on the tile grid, the reducer that
applies them, and the local space-efficiency checks.

Rules come in three kinds:
- PatternRule: a small window pattern replaced by another window with the
  same boundary connection points; closed under the square symmetries.
- LineCollapseRule: a row (column) holding only vertical (horizontal)
  segments and blanks is removed and the grid closes up.
- NugatoryCrossingRule: a crossing with a closed-off tangle on one side
  is replaced by the double arc that keeps the knot in one piece.
"""

import logging
from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal, Sequence

import numpy as np

from knotmosaic.core.config import get_settings
from knotmosaic.errors import MoveError
from knotmosaic.mosaic import (
    Mosaic,
    Position,
    cell_points,
    find_caps,
    occupied_bounds,
    reducible_crossings,
    serialize,
    trace,
)
from knotmosaic.tiles import (
    SQUARE_GROUP,
    X4,
    XC,
    Cell,
    NTile,
    Side,
    Symmetry,
    Tile,
    rotate_tile,
    transform_tile,
)

logger = logging.getLogger(__name__)

Score = tuple[int, int]


def score(m: Mosaic) -> Score:
    """Non-blank tile count, then crossing count."""
    return m.non_blank_count, len(m.crossing_cells())


class MoveRule(ABC):
    """
    Base class for mosaic planar isotopy moves.

    Subclasses report where they apply and produce the rewritten mosaic.
    Anchors are grid positions whose meaning is rule specific.
    """

    def __init__(self, name: str, reducing: bool, reversible: bool) -> None:
        self.name = name
        self.reducing = reducing
        self.reversible = reversible

    @abstractmethod
    def matches(self, m: Mosaic) -> list[Position]:
        """Return every anchor where the rule applies, row-major."""
        pass

    @abstractmethod
    def apply(self, m: Mosaic, anchor: Position) -> Mosaic:
        """
        Rewrite the mosaic at `anchor`.

        Raises:
            MoveError: If the rule does not apply there.
        """
        pass

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"


@dataclass(frozen=True)
class Derived:
    """
    Replacement cell copied from the matched window and rotated.

    Attributes:
        source: (row, column) inside the window
        quarter_turns: Counterclockwise quarter turns applied to the copy
    """

    source: Position
    quarter_turns: int


Matcher = Tile | NTile
Replacement = Tile | Derived


def _matches_cell(matcher: Matcher, cell: Cell) -> bool:
    if isinstance(cell, NTile):
        return False
    if isinstance(matcher, NTile):
        return cell in matcher.domain
    return cell == matcher


def _could_be_blank(cell: Matcher | Replacement) -> bool:
    if isinstance(cell, NTile):
        return Tile.T0 in cell.domain
    if isinstance(cell, Derived):
        return False
    return cell == Tile.T0


class PatternRule(MoveRule):
    """
    Window rewrite rule.

    Args:
        name: Rule family name
        pattern: Rows of tiles or tile domains to match
        replacement: Rows of tiles or Derived copies of matched cells
        reversible: The replacement can be rewritten back by a rule in the set
        symmetry: Square symmetry this variant was produced with
    """

    def __init__(
        self,
        name: str,
        pattern: Sequence[Sequence[Matcher]],
        replacement: Sequence[Sequence[Replacement]],
        reversible: bool = False,
        symmetry: Symmetry = Symmetry(),
    ) -> None:
        self.pattern = tuple(tuple(row) for row in pattern)
        self.replacement = tuple(tuple(row) for row in replacement)
        self.symmetry = symmetry
        before = sum(not _could_be_blank(c) for row in self.pattern for c in row)
        after = sum(not _could_be_blank(c) for row in self.replacement for c in row)
        crossings_before = sum(
            isinstance(c, NTile) and c.domain <= {Tile.T9, Tile.T10}
            or isinstance(c, Tile) and c.is_crossing
            for row in self.pattern
            for c in row
        )
        crossings_after = sum(
            isinstance(c, Tile) and c.is_crossing
            for row in self.replacement
            for c in row
        )
        reducing = (after, crossings_after) < (before, crossings_before) and (
            after <= before
        )
        super().__init__(name, reducing, reversible)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.pattern), len(self.pattern[0])

    def matches_at(self, m: Mosaic, anchor: Position) -> bool:
        h, w = self.shape
        r, c = anchor
        if r < 0 or c < 0 or r + h > m.n or c + w > m.n:
            return False
        return all(
            _matches_cell(self.pattern[i][j], m.cells[r + i][c + j])
            for i in range(h)
            for j in range(w)
        )

    def matches(self, m: Mosaic) -> list[Position]:
        h, w = self.shape
        return [
            (r, c)
            for r in range(m.n - h + 1)
            for c in range(m.n - w + 1)
            if self.matches_at(m, (r, c))
        ]

    def apply(self, m: Mosaic, anchor: Position) -> Mosaic:
        if not self.matches_at(m, anchor):
            raise MoveError(f"{self.name} does not match at {anchor}")
        r, c = anchor
        updates: dict[Position, Cell] = {}
        for i, row in enumerate(self.replacement):
            for j, cell in enumerate(row):
                if isinstance(cell, Derived):
                    si, sj = cell.source
                    source = m.cells[r + si][c + sj]
                    assert isinstance(source, Tile)
                    updates[(r + i, c + j)] = rotate_tile(source, cell.quarter_turns)
                else:
                    updates[(r + i, c + j)] = cell
        return m.with_cells(updates)

    def transformed(self, g: Symmetry) -> "PatternRule":
        """The same move seen through a square symmetry."""
        pattern, _ = _transform_window(self.pattern, g)
        replacement, mapping = _transform_window(self.replacement, g)
        turn = -1 if g.reflected else 1

        def convert(cell: Replacement) -> Replacement:
            if isinstance(cell, Derived):
                return Derived(mapping[cell.source], turn * cell.quarter_turns)
            return transform_tile(cell, g)  # type: ignore[return-value]

        return PatternRule(
            self.name,
            [[transform_tile(c, g) for c in row] for row in pattern],
            [[convert(c) for c in row] for row in replacement],
            self.reversible,
            g,
        )

    def signature(self) -> tuple:
        return (self.name, self.pattern, self.replacement)

    def boundary_points(self, replacement: bool = False) -> set[tuple[Position, Side]]:
        """Connection points on the outer edge of the window."""
        rows = self.replacement if replacement else self.pattern
        h, w = self.shape
        points: set[tuple[Position, Side]] = set()
        for i in range(h):
            for j in range(w):
                cell = rows[i][j]
                sides = (
                    frozenset(Side)
                    if isinstance(cell, Derived)
                    else cell_points(cell)
                )
                for side in sides:
                    di, dj = side.offset
                    if not (0 <= i + di < h and 0 <= j + dj < w):
                        points.add(((i, j), side))
        return points


def _transform_window(
    rows: tuple[tuple, ...], g: Symmetry
) -> tuple[list[list], dict[Position, Position]]:
    h, w = len(rows), len(rows[0])
    cells = np.empty((h, w), dtype=object)
    origin = np.arange(h * w).reshape(h, w)
    for i in range(h):
        for j in range(w):
            cells[i, j] = rows[i][j]
    if g.reflected:
        cells, origin = np.fliplr(cells), np.fliplr(origin)
    cells = np.rot90(cells, g.quarter_turns)
    origin = np.rot90(origin, g.quarter_turns)
    mapping = {
        divmod(int(origin[i, j]), w): (i, j)
        for i in range(origin.shape[0])
        for j in range(origin.shape[1])
    }
    return [list(row) for row in cells], mapping


def symmetric_closure(rule: PatternRule) -> list[PatternRule]:
    """All distinct variants of a rule under the square symmetries."""
    variants: list[PatternRule] = []
    seen: set[tuple] = set()
    for g in SQUARE_GROUP:
        variant = rule.transformed(g)
        if variant.signature() not in seen:
            seen.add(variant.signature())
            variants.append(variant)
    return variants


class LineCollapseRule(MoveRule):
    """
    Remove a row of vertical segments (or a column of horizontal ones).

    The strands only pass straight through such a line, so closing the
    gap keeps every connection. Anchors are (row, 0) or (0, column).
    """

    def __init__(self, orientation: Literal["row", "column"]) -> None:
        super().__init__(f"{orientation}-collapse", reducing=True, reversible=False)
        self.orientation = orientation
        self._segment = Tile.T6 if orientation == "row" else Tile.T5

    def _line(self, m: Mosaic, index: int) -> list[Cell]:
        if self.orientation == "row":
            return list(m.cells[index])
        return [m.cells[r][index] for r in range(m.n)]

    def _applies(self, m: Mosaic, index: int) -> bool:
        line = self._line(m, index)
        return self._segment in line and all(
            cell in (Tile.T0, self._segment) for cell in line
        )

    def matches(self, m: Mosaic) -> list[Position]:
        indices = [i for i in range(m.n) if self._applies(m, i)]
        if self.orientation == "row":
            return [(i, 0) for i in indices]
        return [(0, i) for i in indices]

    def apply(self, m: Mosaic, anchor: Position) -> Mosaic:
        index = anchor[0] if self.orientation == "row" else anchor[1]
        if not self._applies(m, index):
            raise MoveError(f"{self.name} does not match at {anchor}")
        grid = np.empty((m.n, m.n), dtype=object)
        for r, c in m.positions():
            grid[r, c] = m.cells[r][c]
        axis = 0 if self.orientation == "row" else 1
        grid = np.delete(grid, index, axis=axis)
        blank = np.full((1, m.n) if axis == 0 else (m.n, 1), Tile.T0, dtype=object)
        grid = np.concatenate([grid, blank], axis=axis)
        return Mosaic.from_rows(grid.tolist())


class NugatoryCrossingRule(MoveRule):
    """Untwist a reducible crossing into a double arc."""

    def __init__(self) -> None:
        super().__init__("nugatory-crossing", reducing=True, reversible=False)

    def matches(self, m: Mosaic) -> list[Position]:
        if not m.is_deterministic:
            return []
        return reducible_crossings(m)

    def apply(self, m: Mosaic, anchor: Position) -> Mosaic:
        if anchor not in self.matches(m):
            raise MoveError(f"no reducible crossing at {anchor}")
        for tile in (Tile.T7, Tile.T8):
            candidate = m.with_cells({anchor: tile})
            if len(trace(candidate)) == 1:
                return candidate
        raise MoveError(f"crossing at {anchor} cannot be untwisted")


_0, _1, _2, _3, _4 = Tile.T0, Tile.T1, Tile.T2, Tile.T3, Tile.T4
_5, _6 = Tile.T5, Tile.T6


def _r1_kink() -> PatternRule:
    return PatternRule("r1-kink", [[_2, _1], [XC, _4]], [[_0, _0], [_1, _0]])


def _bump_flatten(j: int) -> PatternRule:
    return PatternRule(
        "bump-flatten",
        [[_2, *[_5] * j, _1], [_4, *[_0] * j, _3]],
        [[_0] * (j + 2), [_5] * (j + 2)],
    )


def _cap_retract(j: int) -> PatternRule:
    return PatternRule(
        "cap-retract",
        [[_2, *[_5] * j, _1], [_6, *[_0] * j, _6]],
        [[_0] * (j + 2), [_2, *[_5] * j, _1]],
    )


def _tangle_rotation() -> PatternRule:
    return PatternRule(
        "tangle-rotation",
        [[_2, X4, _4, _0], [_3, X4, _1, _0]],
        [
            [_0, _3, Derived((0, 1), 1), _1],
            [_0, _2, Derived((1, 1), -1), _4],
        ],
    )


def _corner_slide() -> list[PatternRule]:
    forward = [[_2, _5], [_6, _0]]
    backward = [[_0, _2], [_2, _4]]
    return [
        PatternRule("corner-slide", forward, backward, reversible=True),
        PatternRule("corner-slide", backward, forward, reversible=True),
    ]


@lru_cache(maxsize=1)
def _rule_set() -> tuple[MoveRule, ...]:
    patterns: list[PatternRule] = [_r1_kink()]
    collapse: list[PatternRule] = [_bump_flatten(j) for j in range(3)]
    caps: list[PatternRule] = [_cap_retract(j) for j in range(3)]
    neutral: list[PatternRule] = [_tangle_rotation(), *_corner_slide()]

    rules: list[MoveRule] = []
    for rule in patterns:
        rules.extend(symmetric_closure(rule))
    rules.append(NugatoryCrossingRule())
    rules.extend([LineCollapseRule("row"), LineCollapseRule("column")])
    for group in (collapse, caps, neutral):
        for rule in group:
            rules.extend(symmetric_closure(rule))
    return tuple(rules)


def builtin_rules() -> list[MoveRule]:
    """
    The shipped move set in reducer priority order.

    Kink removal, segment collapse, cap retraction, then the neutral
    tangle rotation and corner slides.
    """
    return list(_rule_set())


@dataclass(frozen=True)
class MoveApplication:
    """
    One rule application.

    Attributes:
        rule: Name of the rule applied
        anchor: Where it was applied
        result: Mosaic after the move
    """

    rule: str
    anchor: Position
    result: Mosaic


def match_moves(
    m: Mosaic, rules: Sequence[MoveRule] | None = None
) -> list[tuple[MoveRule, Position]]:
    """Every (rule, anchor) pair that applies to the mosaic."""
    found: list[tuple[MoveRule, Position]] = []
    for rule in rules if rules is not None else builtin_rules():
        found.extend((rule, anchor) for anchor in rule.matches(m))
    return found


def apply_move(m: Mosaic, rule: MoveRule, anchor: Position) -> Mosaic:
    """Apply one rule at one anchor; raises MoveError on a mismatch."""
    return rule.apply(m, anchor)


@dataclass(frozen=True)
class ReductionResult:
    """
    Outcome of a reduction run.

    Attributes:
        mosaic: Best mosaic reached
        steps: Applications in order
        exhausted: The step budget ran out with reductions still available
    """

    mosaic: Mosaic
    steps: tuple[MoveApplication, ...]
    exhausted: bool

    @property
    def reduced(self) -> bool:
        return bool(self.steps)


def _first_reduction(m: Mosaic, rules: Sequence[MoveRule]) -> MoveApplication | None:
    for rule in rules:
        if not rule.reducing:
            continue
        anchors = rule.matches(m)
        if anchors:
            return MoveApplication(rule.name, anchors[0], rule.apply(m, anchors[0]))
    return None


def _find_reduction(
    m: Mosaic, rules: Sequence[MoveRule], depth: int
) -> list[MoveApplication] | None:
    """Shortest neutral path (up to `depth`) ending in a reducing move."""
    direct = _first_reduction(m, rules)
    if direct is not None:
        return [direct]

    neutral = [rule for rule in rules if not rule.reducing]
    visited = {serialize(m)}
    frontier: deque[tuple[Mosaic, list[MoveApplication]]] = deque([(m, [])])
    while frontier:
        state, path = frontier.popleft()
        if len(path) >= depth:
            continue
        for rule in neutral:
            for anchor in rule.matches(state):
                following = rule.apply(state, anchor)
                key = serialize(following)
                if key in visited:
                    continue
                visited.add(key)
                step = MoveApplication(rule.name, anchor, following)
                finish = _first_reduction(following, rules)
                if finish is not None:
                    return [*path, step, finish]
                frontier.append((following, [*path, step]))
    return None


def reduce(
    m: Mosaic,
    budget: int | None = None,
    neutral_depth: int | None = None,
    rules: Sequence[MoveRule] | None = None,
) -> ReductionResult:
    """
    Greedily lower the tile and crossing counts of a knot mosaic.

    Reducing rules are tried in priority order at row-major anchors; when
    none applies, neutral moves are explored breadth-first up to
    `neutral_depth` steps looking for one that unlocks a reduction.

    Args:
        m: Deterministic, suitably connected mosaic
        budget: Maximum rule applications (settings default)
        neutral_depth: Neutral lookahead depth (settings default)
        rules: Rule set (builtin_rules by default)
    """
    settings = get_settings()
    budget = settings.reduce_budget if budget is None else budget
    depth = settings.neutral_depth if neutral_depth is None else neutral_depth
    if budget < 0 or depth < 0:
        raise ValueError("budget and neutral_depth must be non-negative")
    rule_set = list(rules) if rules is not None else builtin_rules()

    current = m
    steps: list[MoveApplication] = []
    while True:
        path = _find_reduction(current, rule_set, depth)
        if path is None:
            return ReductionResult(current, tuple(steps), exhausted=False)
        if len(steps) + len(path) > budget:
            logger.warning("Reduction budget of %d steps exhausted", budget)
            return ReductionResult(current, tuple(steps), exhausted=True)
        for step in path:
            logger.debug("Applied %s at %s", step.rule, step.anchor)
        steps.extend(path)
        current = path[-1].result


CheckName = Literal["corner", "cap-neighbour", "edge-caps", "segment"]


@dataclass(frozen=True)
class SpaceEfficiencyViolation:
    """
    A failed local space-efficiency check.

    Attributes:
        check: Which check failed
        position: Offending cell
        detail: Human-readable explanation
    """

    check: CheckName
    position: Position
    detail: str


_EDGE_CAP_TILES: dict[str, tuple[Tile, Tile]] = {
    "top": (Tile.T2, Tile.T1),
    "bottom": (Tile.T3, Tile.T4),
    "left": (Tile.T2, Tile.T3),
    "right": (Tile.T1, Tile.T4),
}


def local_space_efficiency_report(m: Mosaic) -> list[SpaceEfficiencyViolation]:
    """
    Run the local checks every space-efficient mosaic passes.

    Checks, relative to the occupied rows and columns: blank corners;
    extreme rows and columns made only of caps; four connection points
    inside every cap; and for 7-mosaics no segment tiles in the second
    or penultimate occupied rows and columns.
    """
    bounds = occupied_bounds(m)
    if bounds is None:
        return []
    r0, r1, c0, c1 = bounds
    violations: list[SpaceEfficiencyViolation] = []

    for corner in ((r0, c0), (r0, c1), (r1, c0), (r1, c1)):
        if m[corner] != Tile.T0:
            violations.append(
                SpaceEfficiencyViolation("corner", corner, "corner tile is not blank")
            )

    edges = {
        "top": [(r0, c) for c in range(c0, c1 + 1)],
        "bottom": [(r1, c) for c in range(c0, c1 + 1)],
        "left": [(r, c0) for r in range(r0, r1 + 1)],
        "right": [(r, c1) for r in range(r0, r1 + 1)],
    }
    inward = {"top": (1, 0), "bottom": (-1, 0), "left": (0, 1), "right": (0, -1)}
    caps = find_caps(m)
    for kind, cells in edges.items():
        capped = {
            position
            for cap in caps
            if cap.kind == kind
            for position in cap.positions
            if position in cells
        }
        for position in cells:
            if m[position] != Tile.T0 and position not in capped:
                violations.append(
                    SpaceEfficiencyViolation(
                        "edge-caps", position, f"{kind} edge tile is not part of a cap"
                    )
                )

    for cap in caps:
        dr, dc = inward[cap.kind]
        for r, c in cap.positions:
            neighbour = (r + dr, c + dc)
            if not m.in_bounds(neighbour) or len(cell_points(m[neighbour])) != 4:
                violations.append(
                    SpaceEfficiencyViolation(
                        "cap-neighbour",
                        neighbour,
                        f"cell inside a {cap.kind} cap lacks four connection points",
                    )
                )

    if m.n == 7:
        lines = {(r0 + 1, None), (r1 - 1, None), (None, c0 + 1), (None, c1 - 1)}
        for row, col in sorted(lines, key=str):
            cells = (
                [(row, c) for c in range(m.n)]
                if row is not None
                else [(r, col) for r in range(m.n)]
            )
            for position in cells:
                cell = m[position]
                if isinstance(cell, Tile) and cell.is_segment:
                    violations.append(
                        SpaceEfficiencyViolation(
                            "segment", position, "segment tile next to the outer edge"
                        )
                    )
    return sorted(set(violations), key=lambda v: (v.position, v.check))
