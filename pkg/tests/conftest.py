import os

import pytest
from hypothesis import HealthCheck, settings

from gitbench import anchors

settings.register_profile(
    "default", max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def bridge_ideal():
    return anchors.bridge_ideal()


@pytest.fixture(scope="session")
def tacnodal_ideal():
    return anchors.tacnodal_ideal()


# -- acceptance summary -------------------------------------------------------------

_CRITERIA = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_CRITERIA] = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of one acceptance criterion: ``criterion(n)`` is set per test."""
    log = request.config.stash[_CRITERIA]
    n = request.node.get_closest_marker("criterion").args[0]
    log[n] = "FAIL"
    yield n
    if request.node.rep_call.passed:
        log[n] = "PASS"


@pytest.hookimpl(wrapper=True, tryfirst=True)
def pytest_runtest_makereport(item, call):
    rep = yield
    if rep.when == "call":
        item.rep_call = rep
    return rep


def pytest_terminal_summary(terminalreporter, config):
    log = config.stash.get(_CRITERIA, {})
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(log):
        terminalreporter.write_line(f"criterion {n}: {log[n]}")
