from __future__ import annotations

import sys
from importlib import resources
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from multitile.geometry import SymPolygon, Vec  # noqa: E402
from multitile.instance import parse_instance  # noqa: E402
from multitile.lattice import Lattice2  # noqa: E402

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")


def V(x, y) -> Vec:
    return Vec(x, y)


SQUARE = SymPolygon([V(1, -1), V(1, 1), V(-1, 1), V(-1, -1)])
HEXAGON = SymPolygon([V(1, 0), V(0, 1), V(-1, 1), V(-1, 0), V(0, -1), V(1, -1)])
LAMBDA_HEX = Lattice2(V(2, -1), V(1, 1))


def fixture_instance(name: str):
    text = resources.files("multitile").joinpath("fixtures", name).read_text(encoding="utf-8")
    return parse_instance(text)


@pytest.fixture
def square():
    return SQUARE


@pytest.fixture
def hexagon():
    return HEXAGON
