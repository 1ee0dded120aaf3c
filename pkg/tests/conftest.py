from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

import triplekit
from triplekit import io

sys.path.insert(0, str(Path(__file__).parent))

FIXDIR = Path(triplekit.__file__).parent / "fixtures"

settings.register_profile(
    "default", max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def load(name: str):
    """Read a bundled fixture through the public file parser."""
    return io.read(FIXDIR / f"{name}.json")


@pytest.fixture
def fixture_file():
    return lambda name: FIXDIR / f"{name}.json"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
