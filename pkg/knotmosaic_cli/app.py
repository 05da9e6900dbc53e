"""Knot mosaic CLI application."""

from __future__ import annotations

import logging
from enum import Enum
from pathlib import Path
from typing import NoReturn

import typer

from knotmosaic.core.config import get_settings
from knotmosaic.errors import (
    ConnectivityError,
    DiagramCodeError,
    MosaicParseError,
    TableLoadError,
)
from knotmosaic.invariants import fingerprint, to_diagram_code
from knotmosaic.knottable import (
    KnotTable,
    identify,
    load_exclusions,
    load_table_file,
)
from knotmosaic.layouts import derive_layouts, layout_catalog, layout_key, tile_bounds
from knotmosaic.mosaic import (
    Mosaic,
    component_count,
    is_suitably_connected,
    read_mosaic_file,
    serialize,
)
from knotmosaic.moves import local_space_efficiency_report, reduce
from knotmosaic.render import render_ascii, render_svg
from knotmosaic.search import (
    SMALLEST_LAYOUTS,
    TILE_NUMBER_27_KNOTS,
    SurveyReport,
    run_survey,
    write_jsonl,
)
from knotmosaic_cli.config import SUPPORTED_KEYS, Settings, load_settings
from knotmosaic_cli.output import emit, print_json, print_rows, print_text

EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_MISSING_FILE = 3
EXIT_PARSE_ERROR = 4
EXIT_TABLE_ERROR = 5
EXIT_DIAGRAM_ERROR = 6

TILE_COUNTS = {27, 29, 31, 32, 34, 36, 37, 39, 41}

app = typer.Typer(help="Knot mosaic CLI")
config_app = typer.Typer(help="Local CLI configuration")

app.add_typer(config_app, name="config")


class RenderFormat(str, Enum):
    ASCII = "ascii"
    SVG = "svg"


class Claim(str, Enum):
    BOUNDS = "bounds"
    LAYOUTS = "layouts"
    SURVEY = "survey"


@app.callback()
def main(
    ctx: typer.Context,
    json_output: bool = typer.Option(False, "--json", help="Output JSON"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
) -> None:
    """Load CLI configuration and initialize context."""
    level = "DEBUG" if verbose else get_settings().log_level
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    ctx.obj = load_settings(json_output, verbose)


def _fail(message: str, code: int = EXIT_FAILED) -> NoReturn:
    typer.secho(message, fg=typer.colors.RED, err=True)
    raise typer.Exit(code=code)


def _read_mosaic(path: Path) -> Mosaic:
    try:
        return read_mosaic_file(path)
    except OSError as exc:
        _fail(f"Failed to read {path}: {exc}", EXIT_MISSING_FILE)
    except MosaicParseError as exc:
        _fail(f"Invalid mosaic in {path}: {exc}", EXIT_PARSE_ERROR)


def _read_table(path: Path) -> KnotTable:
    try:
        return load_table_file(path)
    except OSError as exc:
        _fail(f"Failed to read {path}: {exc}", EXIT_MISSING_FILE)
    except TableLoadError as exc:
        _fail(f"Invalid knot table {path}: {exc}", EXIT_TABLE_ERROR)


def _read_exclusions(path: Path) -> set[str]:
    try:
        return load_exclusions(path)
    except OSError as exc:
        _fail(f"Failed to read {path}: {exc}", EXIT_MISSING_FILE)


def _require_knot_mosaic(m: Mosaic) -> None:
    if not m.is_deterministic:
        _fail("Mosaic has undetermined cells; assign every tile first.")
    violation = is_suitably_connected(m)
    if violation is not None:
        _fail(f"Mosaic is not suitably connected: {violation}")


def _layout_ids(value: str) -> list[str]:
    ids = [part.strip() for part in value.split(",") if part.strip()]
    known = {layout.id for layout in layout_catalog()}
    unknown = [layout_id for layout_id in ids if layout_id not in known]
    if unknown or not ids:
        _fail(
            f"Unknown layouts: {', '.join(unknown) or value!r}. "
            f"Known: {', '.join(sorted(known))}.",
            EXIT_USAGE,
        )
    return ids


@app.command("validate")
def validate(
    ctx: typer.Context,
    path: Path = typer.Argument(..., help="Mosaic file"),
) -> None:
    """Check that a mosaic is suitably connected."""
    settings: Settings = ctx.obj
    m = _read_mosaic(path)
    try:
        violation = is_suitably_connected(m)
    except ConnectivityError as exc:
        _fail(f"Invalid mosaic: {exc}")
    if violation is not None:
        if settings.json_output:
            print_json(
                {
                    "valid": False,
                    "position": list(violation.position),
                    "side": violation.side.value,
                }
            )
        typer.secho(f"Invalid mosaic: {violation}", fg=typer.colors.RED, err=True)
        raise typer.Exit(code=EXIT_FAILED)

    payload: dict[str, object] = {
        "valid": True,
        "n": m.n,
        "tiles": m.non_blank_count,
        "crossings": len(m.crossing_cells()),
        "deterministic": m.is_deterministic,
    }
    if m.is_deterministic:
        payload["components"] = component_count(m)
        payload["space_efficiency"] = [
            f"{v.check} at {v.position}: {v.detail}"
            for v in local_space_efficiency_report(m)
        ]
    emit(payload, settings.json_output, "Mosaic")


@app.command("render")
def render(
    ctx: typer.Context,
    path: Path = typer.Argument(..., help="Mosaic file"),
    fmt: RenderFormat = typer.Option(RenderFormat.ASCII, "--format", "-f"),
    out: Path | None = typer.Option(None, "--out", "-o", help="Output file"),
    grid: bool = typer.Option(False, "--grid", help="Draw tile boundaries (svg)"),
) -> None:
    """Draw a mosaic or shadow."""
    m = _read_mosaic(path)
    text = render_svg(m, grid=grid) if fmt == RenderFormat.SVG else render_ascii(m)
    if out is None:
        print_text(text)
        return
    try:
        out.write_text(text, encoding="utf-8")
    except OSError as exc:
        _fail(f"Failed to write {out}: {exc}", EXIT_MISSING_FILE)
    typer.echo(f"Wrote {out}")


@app.command("reduce")
def reduce_command(
    ctx: typer.Context,
    path: Path = typer.Argument(..., help="Mosaic file"),
    budget: int | None = typer.Option(None, "--budget", min=0, help="Move budget"),
) -> None:
    """Apply reducing moves until none applies."""
    settings: Settings = ctx.obj
    m = _read_mosaic(path)
    _require_knot_mosaic(m)
    result = reduce(m, budget=budget)
    if settings.json_output:
        print_json(
            {
                "mosaic": serialize(result.mosaic).splitlines(),
                "tiles_before": m.non_blank_count,
                "tiles_after": result.mosaic.non_blank_count,
                "steps": [
                    {"rule": step.rule, "anchor": list(step.anchor)}
                    for step in result.steps
                ],
                "exhausted": result.exhausted,
            }
        )
        return
    print_text(serialize(result.mosaic))
    if result.exhausted:
        typer.secho("Move budget exhausted.", fg=typer.colors.YELLOW, err=True)


@app.command("identify")
def identify_command(
    ctx: typer.Context,
    path: Path = typer.Argument(..., help="Mosaic file"),
    table_path: Path | None = typer.Option(None, "--table", help="Knot table CSV"),
) -> None:
    """Name the knot a mosaic represents."""
    settings: Settings = ctx.obj
    m = _read_mosaic(path)
    _require_knot_mosaic(m)
    table = _read_table(table_path or settings.table_path)
    try:
        fp = fingerprint(to_diagram_code(m))
    except DiagramCodeError as exc:
        _fail(f"Cannot compute invariants: {exc}", EXIT_DIAGRAM_ERROR)
    names = ["0_1"] if fp.is_unknot else identify(fp, table)
    payload = {
        "knots": names,
        "tiles": m.non_blank_count,
        "crossings": len(m.crossing_cells()),
        **fp.as_dict(),
    }
    emit(
        payload,
        settings.json_output,
        "Knot",
        [
            ("knots", "Name"),
            ("tiles", "Tiles"),
            ("crossings", "Crossings"),
            ("jones", "Jones"),
            ("alexander", "Alexander"),
            ("determinant", "Determinant"),
        ],
    )


def _survey(
    settings: Settings,
    layouts: str,
    min_crossings: int | None,
    table_path: Path | None,
    exclude_path: Path | None,
    jobs: int | None,
) -> SurveyReport:
    ids = _layout_ids(layouts)
    table = _read_table(table_path or settings.table_path)
    exclusions = _read_exclusions(exclude_path or settings.exclusion_path)
    try:
        return run_survey(
            ids,
            table,
            min_crossings=min_crossings,
            exclusions=exclusions,
            jobs=jobs if jobs is not None else settings.jobs,
        )
    except DiagramCodeError as exc:
        _fail(f"Survey failed: {exc}", EXIT_DIAGRAM_ERROR)


@app.command("enumerate")
def enumerate_command(
    ctx: typer.Context,
    layouts: str = typer.Option(",".join(SMALLEST_LAYOUTS), "--layouts"),
    min_crossings: int | None = typer.Option(None, "--min-crossings", min=0),
    table_path: Path | None = typer.Option(None, "--table", help="Knot table CSV"),
    exclude_path: Path | None = typer.Option(None, "--exclude", help="Exclusions"),
    jobs: int | None = typer.Option(None, "--jobs", "-j", min=1),
    out: Path | None = typer.Option(None, "--out", "-o", help="JSONL output"),
) -> None:
    """Enumerate knots on catalog layouts."""
    settings: Settings = ctx.obj
    report = _survey(settings, layouts, min_crossings, table_path, exclude_path, jobs)
    if out is not None:
        try:
            write_jsonl(report, out)
        except OSError as exc:
            _fail(f"Failed to write {out}: {exc}", EXIT_MISSING_FILE)

    if settings.json_output:
        print_json(
            {
                "knots": sorted(report.names()),
                "excluded": sorted(report.flagged("excluded")),
                "low_crossing": sorted(report.flagged("low-crossing")),
                "ambiguous": len(report.ambiguous),
                "unidentified": len(report.unidentified),
                "shadows": report.shadow_counts,
            }
        )
        return
    print_rows(
        "Survey",
        ["Knot", "Tiles", "Crossings", "Layout", "Flags"],
        [
            (
                ", ".join(result.knots) or "?",
                result.tiles,
                result.crossings,
                result.layout,
                result.flags,
            )
            for result in report.all_results()
        ],
    )


def _report_claim(settings: Settings, claim: Claim, details: dict) -> None:
    passed = bool(details["passed"])
    if settings.json_output:
        print_json({"claim": claim.value, **details})
    else:
        shown = {key: value for key, value in details.items() if key != "passed"}
        emit(shown, False, f"Claim {claim.value}")
        colour = typer.colors.GREEN if passed else typer.colors.RED
        typer.secho("PASS" if passed else "FAIL", fg=colour)
    if not passed:
        raise typer.Exit(code=EXIT_FAILED)


def _verify_bounds() -> dict:
    bounds = {n: tile_bounds(n) for n in range(4, 10)}
    expected = {
        n: (5 * n - 8, n * n - 4 if n % 2 == 0 else n * n - 8) for n in bounds
    }
    return {
        "passed": bounds == expected and bounds[7] == (27, 41),
        "bounds": {str(n): list(b) for n, b in bounds.items()},
    }


def _verify_layouts() -> dict:
    catalog = layout_catalog()
    derived = derive_layouts()
    catalog_keys = {layout_key(layout.mosaic): layout.id for layout in catalog}
    derived_keys = {layout_key(layout.mosaic) for layout in derived}
    counts = {layout.count for layout in catalog}
    smallest = [layout.id for layout in catalog if layout.count == 27]
    missing = sorted(catalog_keys[key] for key in catalog_keys.keys() - derived_keys)
    extra = sorted(derived_keys - catalog_keys.keys())
    passed = not missing and not extra and counts == TILE_COUNTS
    return {
        "passed": passed and len(smallest) == 3,
        "catalog": len(catalog),
        "derived": len(derived),
        "counts": sorted(counts),
        "not_derived": missing,
        "not_in_catalog": extra,
    }


def _verify_survey(report: SurveyReport, ids: list[str]) -> dict:
    found = report.names()
    complete = set(SMALLEST_LAYOUTS) <= set(ids)
    missing = sorted(TILE_NUMBER_27_KNOTS - found) if complete else []
    extra = sorted(found - TILE_NUMBER_27_KNOTS)
    identified = not report.ambiguous and not report.unidentified
    return {
        "passed": not missing and not extra and identified,
        "found": len(found),
        "expected": len(TILE_NUMBER_27_KNOTS),
        "missing": missing,
        "extra": extra,
        "ambiguous": len(report.ambiguous),
        "unidentified": len(report.unidentified),
    }


@app.command("verify")
def verify(
    ctx: typer.Context,
    claim: Claim = typer.Option(..., "--claim", help="Claim to check"),
    layouts: str = typer.Option(",".join(SMALLEST_LAYOUTS), "--layouts"),
    table_path: Path | None = typer.Option(None, "--table", help="Knot table CSV"),
    exclude_path: Path | None = typer.Option(None, "--exclude", help="Exclusions"),
    jobs: int | None = typer.Option(None, "--jobs", "-j", min=1),
) -> None:
    """Check a published claim; exits 1 when it does not hold."""
    settings: Settings = ctx.obj
    if claim == Claim.BOUNDS:
        details = _verify_bounds()
    elif claim == Claim.LAYOUTS:
        details = _verify_layouts()
    else:
        report = _survey(settings, layouts, None, table_path, exclude_path, jobs)
        details = _verify_survey(report, _layout_ids(layouts))
    _report_claim(settings, claim, details)


@app.command("layouts")
def layouts_command(ctx: typer.Context) -> None:
    """List the space-efficient 7-mosaic layouts."""
    settings: Settings = ctx.obj
    catalog = layout_catalog()
    if settings.json_output:
        print_json(
            [
                {
                    "id": layout.id,
                    "count": layout.count,
                    "blocks": [list(anchor) for anchor in layout.blocks],
                    "note": layout.note,
                    "mosaic": serialize(layout.mosaic).splitlines(),
                }
                for layout in catalog
            ]
        )
        return
    print_rows(
        "Layouts",
        ["ID", "Tiles", "Interior", "Blocks", "Note"],
        [
            (
                layout.id,
                layout.count,
                len(layout.interior_cells()),
                len(layout.blocks),
                layout.note,
            )
            for layout in catalog
        ],
    )


@config_app.command("show")
def config_show(ctx: typer.Context) -> None:
    settings: Settings = ctx.obj
    payload = {
        "config_path": str(settings.config_path),
        "table": str(settings.table_path),
        "exclude": str(settings.exclusion_path),
        "jobs": settings.jobs,
    }
    emit(
        payload,
        settings.json_output,
        "Config",
        [
            ("config_path", "Path"),
            ("table", "Table"),
            ("exclude", "Exclude"),
            ("jobs", "Jobs"),
        ],
    )


@config_app.command("get")
def config_get(
    ctx: typer.Context,
    key: str = typer.Argument(..., help="Config key to read"),
) -> None:
    settings: Settings = ctx.obj
    values = {
        "table": str(settings.table_path),
        "exclude": str(settings.exclusion_path),
        "jobs": settings.jobs,
    }
    if key not in values:
        _fail(f"Supported keys: {', '.join(SUPPORTED_KEYS)}.")
    if settings.json_output:
        print_json({key: values[key]})
    else:
        typer.echo(values[key])


@config_app.command("set")
def config_set(
    ctx: typer.Context,
    key: str = typer.Argument(..., help="Config key to set"),
    value: str = typer.Argument(..., help="Value to set"),
) -> None:
    settings: Settings = ctx.obj
    if key not in SUPPORTED_KEYS:
        _fail(f"Supported keys: {', '.join(SUPPORTED_KEYS)}.")
    try:
        settings.store.set_default(key, value)
    except ValueError:
        _fail(f"{key} must be an integer.")
    settings.store.save()
    if settings.json_output:
        print_json({key: settings.store.get_default(key)})
    else:
        typer.echo(f"{key} saved.")
