import math

import pytest
from hypothesis import settings

from hweyl.mollifier import build_bump
from hweyl.spectrum import merged_jump_sequence, torus_jump_sequence

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def bump():
    return build_bump()


@pytest.fixture(scope="session")
def spectrum_1e4():
    return merged_jump_sequence(2 * math.pi * 1e4 + 1)


@pytest.fixture(scope="session")
def spectrum_1e6():
    return merged_jump_sequence(1.024e6 + 1)


@pytest.fixture(scope="session")
def torus_1e7():
    return torus_jump_sequence(1e7)


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("HWEYL_CACHE_DIR", str(tmp_path / "cache"))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
