from __future__ import annotations

from pathlib import Path

import pytest

from evl.service.config import SessionConfig
from evl.service.engine import Engine

REPO = Path(__file__).resolve().parent.parent
FIXTURES = REPO / "fixtures"
SUBTITLE_CORPUS = REPO / "tests" / "data" / "subtitles"


@pytest.fixture
def demo_fixture_dir() -> Path:
    return FIXTURES / "demo"


@pytest.fixture
def eval_fixture_dir() -> Path:
    return FIXTURES / "eval"


def make_demo_config(tmp_path: Path, **overrides) -> SessionConfig:
    defaults = dict(
        mode="replay",
        fixture_dir=str(FIXTURES / "demo"),
        state_dir=str(tmp_path / "state"),
    )
    defaults.update(overrides)
    return SessionConfig(**defaults)


@pytest.fixture
def demo_engine(tmp_path) -> Engine:
    return Engine(make_demo_config(tmp_path))


@pytest.fixture
def demo_config_factory(tmp_path):
    counter = 0

    def factory(**overrides) -> SessionConfig:
        nonlocal counter
        counter += 1
        return make_demo_config(tmp_path / f"run{counter}", **overrides)

    return factory
