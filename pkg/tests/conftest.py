import random

import pytest

from anakem.core import profile_new


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(num, desc): acceptance criterion; prints a PASS/FAIL line"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    tr = item.config.pluginmanager.get_plugin("terminalreporter")
    if tr is None:
        return
    status = "PASS" if report.passed else "FAIL"
    num, desc = marker.args
    tr.write_line(f"CRITERION {num:2d}: {status}  {desc} ({report.duration:.1f}s)")


@pytest.fixture(scope="session")
def profile():
    return profile_new(128, 32, "g1")


@pytest.fixture()
def rng():
    return random.Random(0xA17)
