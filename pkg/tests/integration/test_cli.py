"""
Integration Tests for the CLI

Tests for the knotmosaic commands run end to end on files.
"""

import json
from pathlib import Path
from typing import Callable, Iterable

import pytest
from pytest_mock import MockerFixture
from typer.testing import CliRunner

from knotmosaic.invariants import fingerprint, to_diagram_code
from knotmosaic.mosaic import Mosaic
from knotmosaic.search import TILE_NUMBER_27_KNOTS, SurveyReport, SurveyResult
from knotmosaic_cli.app import app
from tests.conftest import KINKED_UNKNOT_TEXT, TREFOIL_TEXT, UNKNOT_TEXT

runner = CliRunner()

Writer = Callable[[str, str], str]


@pytest.fixture(autouse=True)
def _isolated_config(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    """Keep the user's config file out of the tests."""
    monkeypatch.setenv("KNOTMOSAIC_CONFIG_FILE", str(tmp_path / "config.toml"))
    for name in ("TABLE_PATH", "EXCLUSION_PATH", "JOBS"):
        monkeypatch.delenv(f"KNOTMOSAIC_{name}", raising=False)


@pytest.fixture
def write(tmp_path: Path) -> Writer:
    """Write text to a file under tmp_path and return its path as a string."""

    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


class TestValidate:
    """Tests for the validate command."""

    def test_trefoil(self, write: Writer) -> None:
        """A knot mosaic validates with its counts."""
        result = runner.invoke(
            app, ["--json", "validate", write("t.txt", TREFOIL_TEXT)]
        )
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["valid"] is True
        assert data["tiles"] == 12
        assert data["crossings"] == 3
        assert data["components"] == 1
        assert data["space_efficiency"] == []

    def test_broken(self, write: Writer) -> None:
        """A dangling connection point fails with its position."""
        result = runner.invoke(
            app, ["--json", "validate", write("b.txt", "2 1\n3 0\n")]
        )
        assert result.exit_code == 1
        assert '"valid": false' in result.output
        assert '"side": "bottom"' in result.output

    def test_missing_file(self, tmp_path: Path) -> None:
        """Unreadable files exit 3."""
        result = runner.invoke(app, ["validate", str(tmp_path / "absent.txt")])
        assert result.exit_code == 3

    def test_parse_error(self, write: Writer) -> None:
        """Malformed mosaics exit 4."""
        result = runner.invoke(app, ["validate", write("bad.txt", "2 1 0\n3 4\n")])
        assert result.exit_code == 4


class TestIdentify:
    """Tests for the identify command."""

    def test_trefoil(self, write: Writer) -> None:
        """The trefoil mosaic is named 3_1."""
        result = runner.invoke(
            app, ["--json", "identify", write("t.txt", TREFOIL_TEXT)]
        )
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["knots"] == ["3_1"]
        assert data["determinant"] == 3
        assert data["alexander"] == "1:0;-1:1;1:2"

    def test_unknot(self, write: Writer) -> None:
        """Crossingless mosaics are the unknot."""
        result = runner.invoke(
            app, ["--json", "identify", write("u.txt", UNKNOT_TEXT)]
        )
        assert result.exit_code == 0
        assert json.loads(result.stdout)["knots"] == ["0_1"]

    def test_table_output(self, write: Writer) -> None:
        """Without --json the name is printed in a table."""
        result = runner.invoke(app, ["identify", write("t.txt", TREFOIL_TEXT)])
        assert result.exit_code == 0
        assert "3_1" in result.stdout

    def test_bad_table(self, write: Writer) -> None:
        """Table errors exit 5."""
        table = write("table.csv", "3_1,4,B[1 1 1]\n")
        result = runner.invoke(
            app, ["identify", write("t.txt", TREFOIL_TEXT), "--table", table]
        )
        assert result.exit_code == 5

    def test_missing_table(self, write: Writer, tmp_path: Path) -> None:
        """A missing table exits 3."""
        result = runner.invoke(
            app,
            [
                "identify",
                write("t.txt", TREFOIL_TEXT),
                "--table",
                str(tmp_path / "absent.csv"),
            ],
        )
        assert result.exit_code == 3

    def test_shadow_rejected(self, write: Writer) -> None:
        """Undetermined cells must be assigned first."""
        shadow = "0 2 1 0\n2 X4 X4 1\n3 X4 X4 4\n0 3 4 0\n"
        result = runner.invoke(app, ["identify", write("s.txt", shadow)])
        assert result.exit_code == 1


class TestReduceAndRender:
    """Tests for the reduce and render commands."""

    def test_reduce_kink(self, write: Writer) -> None:
        """Reduction removes the twist."""
        path = write("k.txt", KINKED_UNKNOT_TEXT)
        result = runner.invoke(app, ["--json", "reduce", path])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["tiles_after"] < data["tiles_before"]
        assert data["steps"]
        assert data["exhausted"] is False

    def test_reduce_budget(self, write: Writer) -> None:
        """A zero budget leaves the mosaic as it was."""
        path = write("k.txt", KINKED_UNKNOT_TEXT)
        result = runner.invoke(app, ["--json", "reduce", path, "--budget", "0"])
        assert result.exit_code == 0
        assert json.loads(result.stdout)["exhausted"] is True

    def test_render_ascii(self, write: Writer) -> None:
        """ASCII drawings go to stdout."""
        result = runner.invoke(app, ["render", write("t.txt", TREFOIL_TEXT)])
        assert result.exit_code == 0
        assert "-|-" in result.stdout

    def test_render_svg_file(self, write: Writer, tmp_path: Path) -> None:
        """SVG drawings can be written to a file."""
        out = tmp_path / "t.svg"
        result = runner.invoke(
            app,
            ["render", write("t.txt", TREFOIL_TEXT), "-f", "svg", "-o", str(out)],
        )
        assert result.exit_code == 0
        assert "Wrote" in result.stdout
        assert "<svg" in out.read_text()


class TestLayoutsAndVerify:
    """Tests for the layouts and verify commands."""

    def test_layouts(self) -> None:
        """The catalog lists sixteen layouts."""
        result = runner.invoke(app, ["--json", "layouts"])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert len(data) == 16
        assert data[0]["id"] == "27a"
        assert len(data[0]["mosaic"]) == 7

    def test_verify_bounds(self) -> None:
        """The tile-number bounds claim holds."""
        result = runner.invoke(app, ["verify", "--claim", "bounds"])
        assert result.exit_code == 0
        assert "PASS" in result.stdout

    def test_unknown_layout(self) -> None:
        """Unknown layout ids are usage errors."""
        result = runner.invoke(app, ["enumerate", "--layouts", "28"])
        assert result.exit_code == 2

    @pytest.mark.slow
    def test_verify_layouts(self) -> None:
        """The derived layouts match the catalog."""
        result = runner.invoke(app, ["--json", "verify", "--claim", "layouts"])
        assert result.exit_code == 0
        assert json.loads(result.stdout)["derived"] == 16


class TestConfig:
    """Tests for the config commands."""

    def test_set_and_get(self) -> None:
        """Stored defaults are read back."""
        assert runner.invoke(app, ["config", "set", "jobs", "4"]).exit_code == 0
        result = runner.invoke(app, ["config", "get", "jobs"])
        assert result.exit_code == 0
        assert result.stdout.strip() == "4"

    def test_unsupported_key(self) -> None:
        """Unknown keys are rejected."""
        assert runner.invoke(app, ["config", "set", "colour", "red"]).exit_code == 1

    def test_jobs_integer(self) -> None:
        """Worker counts must be integers."""
        assert runner.invoke(app, ["config", "set", "jobs", "many"]).exit_code == 1

    def test_show(self, tmp_path: Path) -> None:
        """The config path is reported."""
        result = runner.invoke(app, ["--json", "config", "show"])
        assert result.exit_code == 0
        assert json.loads(result.stdout)["config_path"] == str(
            tmp_path / "config.toml"
        )


def survey_report(trefoil: Mosaic, names: Iterable[str]) -> SurveyReport:
    fp = fingerprint(to_diagram_code(trefoil))
    result = SurveyResult(trefoil, ("3_1",), fp, 12, 3, "27a")
    return SurveyReport(
        results={name: result for name in names}, shadow_counts={"27a": 1}
    )


class TestSurveyCommands:
    """Tests for enumerate and verify --claim survey with a canned survey."""

    def test_enumerate_summary(self, mocker: MockerFixture, trefoil: Mosaic) -> None:
        """The JSON summary lists the identified knots."""
        run = mocker.patch(
            "knotmosaic_cli.app.run_survey",
            return_value=survey_report(trefoil, ["3_1"]),
        )
        result = runner.invoke(app, ["--json", "enumerate"])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["knots"] == ["3_1"]
        assert data["shadows"] == {"27a": 1}
        args, kwargs = run.call_args
        assert args[0] == ["27a", "27b", "27c"]
        assert kwargs["exclusions"] == set()
        assert kwargs["jobs"] == 1

    def test_enumerate_jsonl(
        self, mocker: MockerFixture, trefoil: Mosaic, tmp_path: Path
    ) -> None:
        """Results are written one per line."""
        mocker.patch(
            "knotmosaic_cli.app.run_survey",
            return_value=survey_report(trefoil, ["3_1"]),
        )
        out = tmp_path / "survey.jsonl"
        result = runner.invoke(app, ["enumerate", "--layouts", "27a", "-o", str(out)])
        assert result.exit_code == 0
        assert json.loads(out.read_text())["knot"] == "3_1"

    def test_verify_survey_fails(self, mocker: MockerFixture, trefoil: Mosaic) -> None:
        """A survey missing the expected knots fails the claim."""
        mocker.patch(
            "knotmosaic_cli.app.run_survey",
            return_value=survey_report(trefoil, ["3_1"]),
        )
        result = runner.invoke(app, ["--json", "verify", "--claim", "survey"])
        assert result.exit_code == 1
        data = json.loads(result.stdout)
        assert data["extra"] == ["3_1"]
        assert len(data["missing"]) == len(TILE_NUMBER_27_KNOTS)

    def test_verify_survey_passes(self, mocker: MockerFixture, trefoil: Mosaic) -> None:
        """Exactly the expected knots pass the claim."""
        report = survey_report(trefoil, TILE_NUMBER_27_KNOTS)
        mocker.patch("knotmosaic_cli.app.run_survey", return_value=report)
        result = runner.invoke(app, ["verify", "--claim", "survey"])
        assert result.exit_code == 0
        assert "PASS" in result.stdout
