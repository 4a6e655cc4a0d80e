"""Shared fixtures."""

import sys
from pathlib import Path

import pytest

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from vendsim.controller import ProductCatalog, build_controller

from helpers import SCENARIOS


@pytest.fixture
def catalog():
    """The four products at list price."""
    return ProductCatalog.default()


@pytest.fixture
def controller(catalog):
    """A fresh vending controller with full shelves."""
    return build_controller(catalog)


@pytest.fixture
def scenario_text():
    """Read a stimulus script from the scenarios directory."""

    def read(name: str) -> str:
        return (SCENARIOS / name).read_text(encoding="utf-8")

    return read
