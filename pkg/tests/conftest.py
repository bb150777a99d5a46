import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from invsimpson.core import TrialTable

settings.register_profile(
    "default", deadline=None, max_examples=100, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", parent=settings.get_profile("default"), derandomize=True)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


@st.composite
def tables(draw, max_trials=200, nondegenerate=False):
    lo = 1 if nondegenerate else 0
    na = draw(st.integers(2 if nondegenerate else 1, max_trials))
    nb = draw(st.integers(2 if nondegenerate else 1, max_trials))
    sa = draw(st.integers(lo, na - lo))
    sb = draw(st.integers(lo, nb - lo))
    return TrialTable(sa, na, sb, nb)


import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[n])
