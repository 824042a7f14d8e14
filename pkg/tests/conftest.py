import os
import sys
from importlib import resources

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from ecshare.config import load_config  # noqa: E402
from ecshare.lsss import build_scheme  # noqa: E402

FIXTURES = resources.files("ecshare") / "fixtures"


def fixture_path(name: str) -> str:
    return str(FIXTURES / f"{name}.json")


@pytest.fixture(scope="session")
def loaded():
    return {name: load_config(fixture_path(name)) for name in ("example1", "example2", "example3", "gf8_m5")}


@pytest.fixture(scope="session")
def schemes(loaded):
    return {name: build_scheme(lc.scheme) for name, lc in loaded.items()}


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
