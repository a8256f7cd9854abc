import os

import pytest
from hypothesis import HealthCheck, settings

from constaq import catalog
from constaq.field import build_field

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def gf4():
    return build_field(2, 2)


@pytest.fixture(scope="session")
def gf9():
    return catalog.gf9(1)


@pytest.fixture(scope="session")
def gf27():
    return catalog.gf27(1)


@pytest.fixture(scope="session")
def gf27_plan():
    return catalog.gf27_plan()


@pytest.fixture(scope="session")
def gf9_plan():
    return catalog.gf9_plan()


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance") or __import__("sys").modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
