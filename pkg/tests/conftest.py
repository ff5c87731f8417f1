from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings

from gptlab.model import build_classical, build_hypercuboid, build_skew_square

settings.register_profile(
    "gptlab",
    max_examples=int(os.environ.get("GPTLAB_EXAMPLES", 25)),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("gptlab")

_LINES: list[str] = []


@pytest.fixture
def record():
    """Log one acceptance line and hand back the verdict."""

    def _record(number: int, title: str, ok: bool, detail: str = "") -> bool:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}"
        if detail:
            line += f"  ({detail})"
        _LINES.append(line)
        print(line)
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def square():
    return build_hypercuboid(2)


@pytest.fixture(scope="session")
def cube():
    return build_hypercuboid(3)


@pytest.fixture(scope="session")
def skew():
    return build_skew_square()


@pytest.fixture(scope="session")
def tri():
    return build_classical(3)
