"""Configuration handling for the knot mosaic CLI.

Stored defaults live in the `[defaults]` table of a TOML file. Environment
variables beat stored defaults, and stored defaults beat the library
settings.
"""

from __future__ import annotations

import json
import os
import sys
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

from knotmosaic.core.config import get_settings

DEFAULTS_SECTION = "defaults"

# key -> parser for values given on the command line
DEFAULT_KEYS: dict[str, Callable[[str], Any]] = {
    "table": str,
    "exclude": str,
    "jobs": int,
}
SUPPORTED_KEYS = tuple(DEFAULT_KEYS)

ENV_OVERRIDES = {
    "table": "KNOTMOSAIC_TABLE_PATH",
    "exclude": "KNOTMOSAIC_EXCLUSION_PATH",
    "jobs": "KNOTMOSAIC_JOBS",
}


def _config_home() -> Path:
    xdg_config_home = os.getenv("XDG_CONFIG_HOME")
    if xdg_config_home:
        return Path(xdg_config_home)
    if sys.platform == "win32":
        appdata = os.getenv("APPDATA")
        return Path(appdata) if appdata else Path.home()
    if sys.platform == "darwin":
        return Path.home() / "Library" / "Application Support"
    return Path.home() / ".config"


def default_config_path() -> Path:
    override = os.getenv("KNOTMOSAIC_CONFIG_FILE")
    if override:
        return Path(override).expanduser()
    return _config_home() / "knotmosaic" / "config.toml"


@dataclass
class Settings:
    """
    Resolved CLI settings passed to commands through the typer context.

    Attributes:
        table_path: Knot table CSV
        exclusion_path: Knot names to skip in surveys
        jobs: Survey worker processes
        config_path: TOML file the defaults came from
        json_output: Print JSON instead of rich tables
        verbose: Debug logging
        store: The loaded defaults, for `config set`
    """

    table_path: Path
    exclusion_path: Path
    jobs: int
    config_path: Path
    json_output: bool
    verbose: bool
    store: ConfigStore


class ConfigStore:
    """TOML file of CLI defaults."""

    def __init__(self, path: Path | None = None) -> None:
        self.path = path or default_config_path()
        self.data: dict[str, Any] = {}

    def load(self) -> ConfigStore:
        text = self.path.read_text() if self.path.exists() else ""
        self.data = tomllib.loads(text) if text.strip() else {}
        return self

    def save(self) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.write_text(_render_defaults(self.defaults))

    @property
    def defaults(self) -> dict[str, Any]:
        section = self.data.get(DEFAULTS_SECTION)
        return section if isinstance(section, dict) else {}

    def get_default(self, key: str) -> Any | None:
        return self.defaults.get(key)

    def set_default(self, key: str, value: str | None) -> None:
        """
        Store or clear one default.

        Raises:
            KeyError: Unknown key
            ValueError: Value does not parse for the key
        """
        parser = DEFAULT_KEYS[key]
        section = dict(self.defaults)
        if value is None:
            section.pop(key, None)
        else:
            section[key] = parser(value)
        if section:
            self.data[DEFAULTS_SECTION] = section
        else:
            self.data.pop(DEFAULTS_SECTION, None)


def _render_defaults(defaults: dict[str, Any]) -> str:
    if not defaults:
        return ""
    # JSON string escapes are valid TOML basic strings
    body = [f"{key} = {json.dumps(value)}" for key, value in defaults.items()]
    return "\n".join([f"[{DEFAULTS_SECTION}]", *body]) + "\n"


def _stored(store: ConfigStore, key: str) -> Any | None:
    if os.getenv(ENV_OVERRIDES[key]):
        return None
    value = store.get_default(key)
    if isinstance(value, str):
        return Path(value).expanduser() if value.strip() else None
    return value


def load_settings(json_output: bool, verbose: bool = False) -> Settings:
    """Resolve CLI settings; commands apply their own flags on top."""
    store = ConfigStore().load()
    library = get_settings()
    jobs = _stored(store, "jobs")
    return Settings(
        table_path=_stored(store, "table") or library.table_path,
        exclusion_path=_stored(store, "exclude") or library.exclusion_path,
        jobs=jobs if isinstance(jobs, int) else library.jobs,
        config_path=store.path,
        json_output=json_output,
        verbose=verbose,
        store=store,
    )
