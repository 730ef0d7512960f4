import os

import pytest
from hypothesis import HealthCheck, settings

from asymflt.audit import builtin_field

settings.register_profile("repo", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def QQ():
    return builtin_field("Q")


@pytest.fixture(scope="session")
def K2():
    return builtin_field("Qsqrt2")


@pytest.fixture(scope="session")
def Z16p():
    return builtin_field("Zeta16plus")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
