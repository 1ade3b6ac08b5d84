"""Shared fixtures for the starprob test suite."""

from __future__ import annotations

import pathlib

import pytest
from hypothesis import HealthCheck, settings

from starprob import SPStructure
from starprob.suites import wheel_structure

settings.register_profile(
    "starprob",
    deadline=None,
    max_examples=60,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("starprob")

FIXTURES = pathlib.Path(__file__).resolve().parents[1] / "fixtures"

# Populated by tests/test_acceptance.py; echoed verbatim at the end of the
# pytest run so every criterion gets exactly one visible PASS/FAIL line.
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def fixture_dir() -> pathlib.Path:
    return FIXTURES


@pytest.fixture(scope="session")
def classical4() -> SPStructure:
    return SPStructure.classical(4)


@pytest.fixture(scope="session")
def classical6() -> SPStructure:
    return SPStructure.classical(6)


@pytest.fixture(scope="session")
def ray2() -> SPStructure:
    return SPStructure.ray(2)


@pytest.fixture(scope="session")
def ray3() -> SPStructure:
    return SPStructure.ray(3)


@pytest.fixture(scope="session")
def wheel() -> SPStructure:
    return wheel_structure()


@pytest.fixture(scope="session")
def acceptance_log() -> list[str]:
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
