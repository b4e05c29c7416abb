"""Shared fixtures and the per-criterion acceptance summary."""

from collections import OrderedDict

import numpy as np
import pytest

from qslbattery.dynamics import MARKOVIAN_PRESET, NON_MARKOVIAN_PRESET

_CRITERIA = OrderedDict()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    report = outcome.get_result()
    number, title = marker.args
    entry = _CRITERIA.setdefault(number, {"title": title, "ok": True, "seen": False})
    if report.when == "call":
        entry["seen"] = True
    if report.failed:
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entry = _CRITERIA[number]
        status = "PASS" if entry["ok"] and entry["seen"] else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2} {status}  {entry['title']}")


@pytest.fixture(scope="session")
def nm_params():
    return NON_MARKOVIAN_PRESET


@pytest.fixture(scope="session")
def m_params():
    return MARKOVIAN_PRESET


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
