"""
Unit Tests for CLI Configuration.

Tests for the TOML config store and settings resolution.
"""

from pathlib import Path

import pytest

from knotmosaic.core.config import DATA_DIR
from knotmosaic_cli.config import ConfigStore, load_settings


@pytest.fixture
def config_file(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    """Point the CLI at a config file under tmp_path."""
    path = tmp_path / "config.toml"
    monkeypatch.setenv("KNOTMOSAIC_CONFIG_FILE", str(path))
    for name in ("TABLE_PATH", "EXCLUSION_PATH", "JOBS"):
        monkeypatch.delenv(f"KNOTMOSAIC_{name}", raising=False)
    return path


class TestConfigStore:
    """Tests for the TOML-backed store."""

    def test_missing_file(self, tmp_path: Path) -> None:
        """A missing file loads as empty."""
        store = ConfigStore(tmp_path / "absent.toml").load()
        assert store.data == {}

    def test_round_trip(self, tmp_path: Path) -> None:
        """Saved defaults load back."""
        path = tmp_path / "nested" / "config.toml"
        store = ConfigStore(path)
        store.set_default("table", "/data/knots.csv")
        store.set_default("jobs", "4")
        store.save()

        again = ConfigStore(path).load()
        assert again.get_default("table") == "/data/knots.csv"
        assert again.get_default("jobs") == 4
        assert path.read_text().startswith("[defaults]\n")

    def test_unset(self, tmp_path: Path) -> None:
        """Setting None removes the key and an empty section."""
        store = ConfigStore(tmp_path / "config.toml")
        store.set_default("exclude", "done.txt")
        store.set_default("exclude", None)
        assert store.data == {}

    def test_unsupported_key(self, tmp_path: Path) -> None:
        """Only known keys can be set."""
        with pytest.raises(KeyError):
            ConfigStore(tmp_path / "config.toml").set_default("colour", "blue")

    def test_jobs_must_be_integer(self, tmp_path: Path) -> None:
        """Worker counts are integers."""
        with pytest.raises(ValueError):
            ConfigStore(tmp_path / "config.toml").set_default("jobs", "many")

    def test_quotes_escaped(self, tmp_path: Path) -> None:
        """Backslashes and quotes survive a save."""
        path = tmp_path / "config.toml"
        store = ConfigStore(path)
        store.set_default("table", 'C:\\knots "main".csv')
        store.save()
        assert ConfigStore(path).load().get_default("table") == 'C:\\knots "main".csv'


class TestLoadSettings:
    """Tests for settings precedence."""

    def test_library_defaults(self, config_file: Path) -> None:
        """Without a config file the shipped data is used."""
        settings = load_settings(json_output=False)
        assert settings.table_path == DATA_DIR / "knots.csv"
        assert settings.jobs == 1
        assert settings.config_path == config_file

    def test_file_overrides_defaults(self, config_file: Path) -> None:
        """Stored defaults win over the library defaults."""
        config_file.write_text('[defaults]\ntable = "/tmp/table.csv"\njobs = 3\n')
        settings = load_settings(json_output=True, verbose=True)
        assert settings.table_path == Path("/tmp/table.csv")
        assert settings.jobs == 3
        assert settings.json_output
        assert settings.verbose

    def test_environment_wins(
        self, config_file: Path, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """Environment variables win over the config file."""
        config_file.write_text('[defaults]\ntable = "/tmp/table.csv"\njobs = 3\n')
        monkeypatch.setenv("KNOTMOSAIC_TABLE_PATH", "/srv/knots.csv")
        monkeypatch.setenv("KNOTMOSAIC_JOBS", "8")
        settings = load_settings(json_output=False)
        assert settings.table_path == Path("/srv/knots.csv")
        assert settings.jobs == 8
