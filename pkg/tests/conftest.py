"""Test configuration and fixtures."""

import logging

import pytest

from src.config import Settings
from src.models.graph import Graph
from src.services.generators import cycle, iterated_mycielski, kneser
from tests.strategies import tree_graph


@pytest.fixture(scope="session")
def c5() -> Graph:
    return cycle(5)


@pytest.fixture(scope="session")
def grotzsch() -> Graph:
    """Mycielskian of C5: C5 on 0..4, shadows 5..9, apex 10."""
    return iterated_mycielski(1)


@pytest.fixture(scope="session")
def m2() -> Graph:
    """Second Mycielskian of C5 (23 vertices, chromatic number 5)."""
    return iterated_mycielski(2)


@pytest.fixture(scope="session")
def petersen() -> Graph:
    return kneser(5, 2)


@pytest.fixture(scope="session")
def t121_graph() -> Graph:
    """The tree T(1,2,1) as a host graph: 0-1, 1-2, 1-3, 2-4, 3-5."""
    return tree_graph((1, 2, 1))


@pytest.fixture
def test_settings(tmp_path) -> Settings:
    """Settings isolated from the environment and any .env file."""
    return Settings(_env_file=None, log_dir=tmp_path / "logs", coloring_node_budget=2_000_000)


@pytest.fixture(autouse=True)
def restore_root_logging():
    """Keep handlers installed by a CLI run from leaking into later tests."""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)
