"""
Diagram Codes

Planar diagram codes for single-component knot diagrams, built from
traced mosaics, PD text, signed Gauss text or braid words.

Each crossing is X[a, b, c, d]: `a` is the incoming under-strand edge and
the remaining edges follow counterclockwise. Edges are renumbered 1..2k
along the knot, so the edge entering the j-th crossing visit is j.
A crossing is positive when the over strand enters at `d`.
"""

import re
from dataclasses import dataclass

from knotmosaic.errors import DiagramCodeError
from knotmosaic.mosaic import Mosaic, trace
from knotmosaic.tiles import Side

PDCrossing = tuple[int, int, int, int]


@dataclass(frozen=True)
class GaussVisit:
    """
    One pass of the knot through a crossing.

    Attributes:
        crossing: Index into DiagramCode.crossings
        over: True for the over strand
    """

    crossing: int
    over: bool


@dataclass(frozen=True)
class DiagramCode:
    """
    Planar diagram code of a knot.

    Attributes:
        crossings: X[a, b, c, d] label tuples
        signs: +1 or -1 per crossing
        gauss: Crossing visits in knot order
    """

    crossings: tuple[PDCrossing, ...] = ()
    signs: tuple[int, ...] = ()
    gauss: tuple[GaussVisit, ...] = ()

    @property
    def k(self) -> int:
        return len(self.crossings)

    def gauss_word(self) -> list[int]:
        return [visit.crossing for visit in self.gauss]

    def to_pd_text(self) -> str:
        return " ".join(
            "X[" + " ".join(str(label) for label in x) + "]" for x in self.crossings
        )

    def to_gauss_text(self) -> str:
        parts = []
        for visit in self.gauss:
            sign = "+" if self.signs[visit.crossing] > 0 else "-"
            parts.append(f"{'O' if visit.over else 'U'}{visit.crossing + 1}{sign}")
        return "G[" + " ".join(parts) + "]"


EMPTY_CODE = DiagramCode()


def writhe(code: DiagramCode) -> int:
    """Sum of crossing signs."""
    return sum(code.signs)


def mirror(code: DiagramCode) -> DiagramCode:
    """Mirror image: every crossing changes over and under."""
    flipped = [
        (d, a, b, c) if s > 0 else (b, c, d, a)
        for (a, b, c, d), s in zip(code.crossings, code.signs)
    ]
    return diagram_from_pd(flipped)


def diagram_from_pd(
    crossings: list[PDCrossing] | tuple[PDCrossing, ...]
) -> DiagramCode:
    """
    Build a diagram code from PD crossings.

    Walks the knot from the incoming under edge of the first crossing,
    recovering crossing signs and the Gauss sequence, and renumbers the
    edges along the walk.

    Raises:
        DiagramCodeError: If a label does not appear exactly twice, an
            under strand is traversed backwards, or the code has more
            than one component.
    """
    crossings = [tuple(x) for x in crossings]
    if not crossings:
        return EMPTY_CODE

    slots: dict[int, list[tuple[int, int]]] = {}
    for i, x in enumerate(crossings):
        if len(x) != 4:
            raise DiagramCodeError(f"crossing {i + 1} has {len(x)} labels")
        for p, label in enumerate(x):
            slots.setdefault(label, []).append((i, p))
    for label, where in slots.items():
        if len(where) != 2:
            raise DiagramCodeError(f"label {label} appears {len(where)} times")

    k = len(crossings)
    visits: list[tuple[int, int]] = []
    signs: list[int | None] = [None] * k
    under_seen = [False] * k
    i, p = 0, 0
    while True:
        if p in (0, 2):
            if p == 2 or under_seen[i]:
                raise DiagramCodeError(
                    f"under strand of crossing {i + 1} runs backwards"
                )
            under_seen[i] = True
        else:
            if signs[i] is not None:
                raise DiagramCodeError(f"crossing {i + 1} visited twice on top")
            signs[i] = 1 if p == 3 else -1
        visits.append((i, p))
        out_slot = (i, (p + 2) % 4)
        label = crossings[i][out_slot[1]]
        a, b = slots[label]
        i, p = b if a == out_slot else a
        if (i, p) == (0, 0):
            break
        if len(visits) > 2 * k:
            raise DiagramCodeError("walk does not close")

    if len(visits) != 2 * k:
        raise DiagramCodeError(
            f"code has more than one component ({len(visits)} of {2 * k} visits)"
        )

    relabelled = [[0, 0, 0, 0] for _ in range(k)]
    for j, (i, p) in enumerate(visits, start=1):
        relabelled[i][p] = j
        relabelled[i][(p + 2) % 4] = j % (2 * k) + 1
    return DiagramCode(
        crossings=tuple((x[0], x[1], x[2], x[3]) for x in relabelled),
        signs=tuple(s for s in signs if s is not None),
        gauss=tuple(GaussVisit(i, p % 2 == 1) for i, p in visits),
    )


def to_diagram_code(m: Mosaic) -> DiagramCode:
    """
    Read the diagram code of a knot mosaic.

    Crossings are numbered in the order their cells appear in row-major
    order; the walk starts where the mosaic trace starts.

    Raises:
        DiagramCodeError: If the mosaic traces to more than one component.
    """
    strands = trace(m)
    if len(strands) != 1:
        raise DiagramCodeError(f"mosaic has {len(strands)} components, expected 1")

    visits = strands[0].crossing_visits()
    if not visits:
        return EMPTY_CODE
    positions = m.crossing_cells()
    index = {position: i for i, position in enumerate(positions)}
    total = len(visits)

    labels: list[dict[Side, int]] = [{} for _ in positions]
    under_entry: list[Side] = [Side.TOP] * len(positions)
    for j, step in enumerate(visits, start=1):
        side_labels = labels[index[step.position]]
        side_labels[step.entry] = j
        side_labels[step.exit] = j % total + 1
        if not step.over:
            under_entry[index[step.position]] = step.entry

    pd: list[PDCrossing] = []
    for i in range(len(positions)):
        start = under_entry[i]
        a, b, c, d = (labels[i][start.rotate(q)] for q in range(4))
        pd.append((a, b, c, d))
    return diagram_from_pd(pd)


_PD_RE = re.compile(r"X\[\s*(-?\d+)[\s,]+(-?\d+)[\s,]+(-?\d+)[\s,]+(-?\d+)\s*\]")
_GAUSS_RE = re.compile(r"^([OU])(\d+)([+-])$")


def parse_pd(text: str) -> DiagramCode:
    """Parse "X[a b c d] X[...]" text; an empty string is the unknot."""
    body = text.strip()
    matches = list(_PD_RE.finditer(body))
    if _PD_RE.sub("", body).strip():
        raise DiagramCodeError(f"malformed PD code {text!r}")
    return diagram_from_pd([tuple(int(g) for g in m.groups()) for m in matches])


def parse_signed_gauss(text: str) -> DiagramCode:
    """
    Parse "G[O1+ U2+ ...]" text into a diagram code.

    Each entry names over (O) or under (U), the crossing number and the
    crossing sign.

    Raises:
        DiagramCodeError: If a crossing is not met once over and once
            under with a consistent sign.
    """
    body = text.strip()
    if not (body.startswith("G[") and body.endswith("]")):
        raise DiagramCodeError(f"malformed Gauss code {text!r}")
    entries = body[2:-1].replace(",", " ").split()
    if not entries:
        return EMPTY_CODE

    total = len(entries)
    under: dict[int, tuple[int, int]] = {}
    over: dict[int, tuple[int, int]] = {}
    sign: dict[int, int] = {}
    for j, entry in enumerate(entries, start=1):
        match = _GAUSS_RE.match(entry)
        if not match:
            raise DiagramCodeError(f"malformed Gauss entry {entry!r}")
        kind, number, mark = match.group(1), int(match.group(2)), match.group(3)
        target = over if kind == "O" else under
        if number in target:
            raise DiagramCodeError(f"crossing {number} met twice as {kind}")
        target[number] = (j, j % total + 1)
        value = 1 if mark == "+" else -1
        if sign.setdefault(number, value) != value:
            raise DiagramCodeError(f"crossing {number} has inconsistent signs")

    if set(over) != set(under):
        missing = sorted(set(over) ^ set(under))
        raise DiagramCodeError(f"crossings {missing} are not met exactly twice")

    pd: list[PDCrossing] = []
    for number in sorted(under):
        a, c = under[number]
        over_in, over_out = over[number]
        if sign[number] > 0:
            pd.append((a, over_out, c, over_in))
        else:
            pd.append((a, over_in, c, over_out))
    return diagram_from_pd(pd)


def diagram_from_braid(word: list[int]) -> DiagramCode:
    """
    Closure of a braid word.

    Generator i (1-based) crosses strands i and i + 1; a positive entry
    is a positive crossing.

    Raises:
        DiagramCodeError: If the closure is not a knot.
    """
    if not word:
        raise DiagramCodeError("empty braid word")
    if any(g == 0 for g in word):
        raise DiagramCodeError("braid generators are nonzero")
    width = max(abs(g) for g in word) + 1
    current = list(range(1, width + 1))
    next_label = width + 1
    crossings: list[list[int]] = []
    for g in word:
        p = abs(g) - 1
        left_out, right_out = next_label, next_label + 1
        next_label += 2
        if g > 0:
            crossings.append([current[p], left_out, right_out, current[p + 1]])
        else:
            crossings.append([current[p + 1], current[p], left_out, right_out])
        current[p], current[p + 1] = left_out, right_out

    closing = {final: start for start, final in enumerate(current, start=1)}
    pd = [tuple(closing.get(label, label) for label in x) for x in crossings]
    return diagram_from_pd(pd)  # type: ignore[arg-type]


def parse_braid(text: str) -> DiagramCode:
    body = text.strip()
    if not (body.startswith("B[") and body.endswith("]")):
        raise DiagramCodeError(f"malformed braid word {text!r}")
    try:
        word = [int(token) for token in body[2:-1].replace(",", " ").split()]
    except ValueError as exc:
        raise DiagramCodeError(f"malformed braid word {text!r}") from exc
    return diagram_from_braid(word)


def parse_code(text: str) -> DiagramCode:
    """Parse a PD, signed Gauss or braid code by its prefix."""
    body = text.strip()
    if body.startswith("G["):
        return parse_signed_gauss(body)
    if body.startswith("B["):
        return parse_braid(body)
    return parse_pd(body)


def is_connected_sum(code: DiagramCode) -> bool:
    """
    Detect a diagrammatic connected sum.

    True when some proper stretch of the cyclic Gauss sequence meets each
    of its crossings twice while crossings remain outside it.
    """
    word = code.gauss_word()
    total = len(word)
    for start in range(total):
        counts: dict[int, int] = {}
        odd = 0
        for length in range(1, total - 1):
            crossing = word[(start + length - 1) % total]
            counts[crossing] = counts.get(crossing, 0) + 1
            odd += 1 if counts[crossing] == 1 else -1
            if odd == 0 and length % 2 == 0:
                return True
    return False
