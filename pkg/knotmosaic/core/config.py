"""
Engine Configuration.

Centralized settings management using pydantic-settings.
Defaults point at the data files shipped with the package and can be
overridden through KNOTMOSAIC_* environment variables or a .env file.
"""

from functools import lru_cache
from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


class Settings(BaseSettings):
    """Engine settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="KNOTMOSAIC_",
        case_sensitive=False,
        extra="ignore",
    )

    # Data files
    table_path: Path = DATA_DIR / "knots.csv"
    exclusion_path: Path = DATA_DIR / "exclusions.txt"
    layout_catalog_path: Path = DATA_DIR / "layouts.toml"

    # Survey
    jobs: int = 1
    min_crossings: int = 9

    # Reducer
    reduce_budget: int = 200  # rule applications before giving up
    neutral_depth: int = 3  # lookahead through non-reducing moves

    # Logging
    log_level: str = "INFO"


@lru_cache
def get_settings() -> Settings:
    """
    Get cached settings instance.

    Uses lru_cache to ensure settings are only loaded once.
    """
    return Settings()
