"""
Pytest Configuration and Fixtures

Shared mosaics, tables and layouts for all tests.
"""

import os

import pytest

from knotmosaic.core.config import DATA_DIR, get_settings
from knotmosaic.knottable import KnotTable, load_table_file
from knotmosaic.layouts import Layout
from knotmosaic.mosaic import Mosaic, parse_mosaic
from knotmosaic.tiles import Tile

TREFOIL_TEXT = """
0 2 1 0
2 9 10 1
3 10 8 4
0 3 4 0
"""

UNKNOT_TEXT = """
2 1
3 4
"""

KINKED_UNKNOT_TEXT = """
2 1 0
3 9 1
0 3 4
"""

SMALL_LAYOUT_TEXT = """
. 2 1 .
2 X X 1
3 X X 4
. 3 4 .
"""


def pytest_collection_modifyitems(
    config: pytest.Config, items: list[pytest.Item]
) -> None:
    """Skip slow tests unless KNOTMOSAIC_RUN_SLOW=1."""
    if os.getenv("KNOTMOSAIC_RUN_SLOW") == "1":
        return
    skip_slow = pytest.mark.skip(reason="set KNOTMOSAIC_RUN_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def _fresh_settings() -> None:
    """Settings are cached; tests that patch the environment need a reload."""
    get_settings.cache_clear()


@pytest.fixture
def trefoil() -> Mosaic:
    """Alternating trefoil on a 4-mosaic (writhe +3)."""
    return parse_mosaic(TREFOIL_TEXT)


@pytest.fixture
def unknot() -> Mosaic:
    """Smallest unknot mosaic."""
    return parse_mosaic(UNKNOT_TEXT)


@pytest.fixture
def kinked_unknot() -> Mosaic:
    """Unknot with one Reidemeister I twist."""
    return parse_mosaic(KINKED_UNKNOT_TEXT)


@pytest.fixture
def trefoil_with_double_arc(trefoil: Mosaic) -> Mosaic:
    """The trefoil with its double arc turned: an unknot with twists."""
    return trefoil.with_cells({(2, 2): Tile.T7})


@pytest.fixture(scope="session")
def knot_table() -> KnotTable:
    """The knot table shipped with the package."""
    return load_table_file(DATA_DIR / "knots.csv")


@pytest.fixture
def small_layout() -> Layout:
    """4x4 layout with a 2x2 interior."""
    return Layout.from_text(SMALL_LAYOUT_TEXT, id="small")
