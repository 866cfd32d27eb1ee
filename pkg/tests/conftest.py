import time

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "hbl",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("hbl")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_configure(config):
    config._hbl_criteria = {}
    config._hbl_session_start = time.perf_counter()


def pytest_collection_modifyitems(session, config, items):
    # the wall-clock criterion measures everything before it, so it goes last
    last = [it for it in items if it.name.startswith("test_criterion_12")]
    items[:] = [it for it in items if it not in last] + last


@pytest.fixture
def record_criterion(request):
    """Store ``(passed, detail)`` for an acceptance criterion; printed in the terminal summary."""

    def record(number, title, passed, detail=""):
        request.config._hbl_criteria[number] = (title, bool(passed), detail)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    crit = getattr(config, "_hbl_criteria", {})
    if not crit:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(crit):
        title, passed, detail = crit[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2} {status}  {title}  {detail}")
