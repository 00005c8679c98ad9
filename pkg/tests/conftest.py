import random
from fractions import Fraction

import pytest

CRITERIA = {
    1: "Schur-Horn containment, coverage and runtime",
    2: "Kostant vertex counts",
    3: "cut identity, nested cuts and compactness",
    4: "half-line cut to a segment, CLI fixture",
    5: "local cone equals tangent cone",
    6: "reconstruction from tangent cones",
    7: "closure of a face intersection",
    8: "double-description round trip",
    9: "fiber connectedness excluded",
}

_outcomes = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): test backs acceptance criterion n")


def pytest_runtest_logreport(report):
    n = getattr(report, "criterion", None)
    if n is None:
        return
    if report.when == "call" or report.outcome != "passed":
        prev = _outcomes.get(n, "PASS")
        now = "PASS" if report.outcome == "passed" else ("SKIP" if report.outcome == "skipped" else "FAIL")
        _outcomes[n] = "FAIL" if "FAIL" in (prev, now) else now


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep.criterion = m.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        status = _outcomes.get(n, "NOT RUN")
        terminalreporter.write_line(f"criterion {n}: {status:<7} {CRITERIA[n]}")


@pytest.fixture
def rng():
    return random.Random(12345)


def frac(s):
    return Fraction(s)
