from __future__ import annotations

import os
from functools import lru_cache
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from bandbrick.brauer import bga_presentation, parse_brauer_graph
from bandbrick.corpus import named, random_special_biserial
from bandbrick.quiver import parse_presentation

DATA = Path(__file__).parent / "data"

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

BRAUER_CORPUS = ("double_edge", "square", "two_loops_nested", "two_triangles")
RANDOM_SEEDS = (0, 1, 4)


def data_path(name: str) -> str:
    return str(DATA / name)


@lru_cache(maxsize=None)
def load_presentation(name: str):
    return parse_presentation((DATA / name).read_text())


@lru_cache(maxsize=None)
def load_graph(name: str):
    return parse_brauer_graph((DATA / f"{name}.bg").read_text())


@lru_cache(maxsize=None)
def corpus() -> tuple:
    """(label, presentation) pairs shared by the invariant and oracle suites."""
    out = [(k, named(k)) for k in ("kronecker", "stacked-kronecker", "local-gentle")]
    out += [(f"bg:{k}", bga_presentation(load_graph(k))) for k in BRAUER_CORPUS]
    out += [(f"random:{s}", random_special_biserial(s, 4, 7, 4)) for s in RANDOM_SEEDS]
    return tuple(out)


@pytest.fixture
def kronecker():
    return named("kronecker")


@pytest.fixture
def stacked():
    return named("stacked-kronecker")


@pytest.fixture
def local_gentle():
    return named("local-gentle")


@pytest.fixture
def linear_a2():
    return named("linear-a2")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
