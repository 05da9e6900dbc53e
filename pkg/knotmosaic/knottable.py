"""
Knot Table

Reference table of prime knots with precomputed fingerprints, and the
exclusion list of knots already realized on smaller mosaics.

Table rows are `name,crossings,code` where the code is PD
("X[1 5 2 4] X[...]"), signed Gauss ("G[O1+ U2+ ...]") or a braid word
("B[1 1 1]"). Lines starting with '#' are comments.
"""

import csv
import io
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

from knotmosaic.core.config import get_settings
from knotmosaic.errors import DiagramCodeError, TableLoadError
from knotmosaic.invariants import DiagramCode, Fingerprint, fingerprint, parse_code
from knotmosaic.invariants.fingerprint import FingerprintKey

logger = logging.getLogger(__name__)

_NAME_RE = re.compile(r"^(\d+)(?:_\d+|[an]\d+)$")


@dataclass(frozen=True)
class KnotRecord:
    """
    One table entry.

    Attributes:
        name: Rolfsen name (e.g. 9_10) or Dowker-Thistlethwaite name (11a341)
        crossings: Crossing number
        code: Reference diagram
        fingerprint: Invariants computed from `code`
    """

    name: str
    crossings: int
    code: DiagramCode
    fingerprint: Fingerprint


@dataclass
class KnotTable:
    """Knot records indexed by fingerprint."""

    records: list[KnotRecord] = field(default_factory=list)
    index: dict[FingerprintKey, list[str]] = field(default_factory=dict)

    def add(self, record: KnotRecord) -> None:
        self.records.append(record)
        self.index.setdefault(record.fingerprint.key, []).append(record.name)

    def names(self) -> list[str]:
        return [record.name for record in self.records]

    def get(self, name: str) -> KnotRecord | None:
        for record in self.records:
            if record.name == name:
                return record
        return None

    def crossing_number(self, name: str) -> int | None:
        record = self.get(name)
        return record.crossings if record else None

    def collisions(self) -> dict[FingerprintKey, list[str]]:
        """Fingerprints shared by more than one name."""
        return {key: names for key, names in self.index.items() if len(names) > 1}

    def __len__(self) -> int:
        return len(self.records)


def crossing_number_from_name(name: str) -> int | None:
    match = _NAME_RE.match(name)
    return int(match.group(1)) if match else None


def load_table(source: str) -> KnotTable:
    """
    Ingest table text.

    Raises:
        TableLoadError: On a malformed row or an invalid diagram code.
    """
    table = KnotTable()
    reader = csv.reader(io.StringIO(source))
    for line_number, row in enumerate(reader, start=1):
        if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
            continue
        if row[0].strip().lower() == "name":
            continue
        table.add(_parse_row(row, line_number))

    for key, names in table.collisions().items():
        logger.warning("Fingerprint shared by %s (jones %s)", ", ".join(names), key[0])
    logger.info("Loaded knot table: %d records", len(table))
    return table


def _parse_row(row: list[str], line_number: int) -> KnotRecord:
    if len(row) != 3:
        raise TableLoadError(line_number, f"expected 3 columns, got {len(row)}")
    name, crossings_text, code_text = (cell.strip() for cell in row)
    try:
        crossings = int(crossings_text)
    except ValueError as exc:
        raise TableLoadError(
            line_number, f"bad crossing number {crossings_text!r}"
        ) from exc

    expected = crossing_number_from_name(name)
    if expected is None:
        raise TableLoadError(line_number, f"unrecognized knot name {name!r}")
    if expected != crossings:
        raise TableLoadError(
            line_number, f"{name} implies {expected} crossings, row says {crossings}"
        )

    try:
        code = parse_code(code_text)
        fp = fingerprint(code)
    except DiagramCodeError as exc:
        raise TableLoadError(line_number, f"{name}: {exc}") from exc
    return KnotRecord(name, crossings, code, fp)


def load_table_file(path: Path) -> KnotTable:
    return load_table(Path(path).read_text(encoding="utf-8"))


def load_default_table() -> KnotTable:
    return load_table_file(get_settings().table_path)


def load_exclusions(path: Path) -> set[str]:
    """Names listed one per line (or comma separated); '#' starts a comment."""
    names: set[str] = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        body = line.split("#", 1)[0]
        names.update(part.strip() for part in body.split(",") if part.strip())
    return names


def identify(fp: Fingerprint, table: KnotTable) -> list[str]:
    """All table names sharing the fingerprint; empty when none match."""
    return list(table.index.get(fp.key, []))
