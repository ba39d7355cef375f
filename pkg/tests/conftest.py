import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from helpers import make_rng, pipeline

settings.register_profile(
    "qna",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
    derandomize="QNA_SEED" not in os.environ,
)
settings.load_profile("qna")


@pytest.fixture(scope="session")
def sl3():
    return pipeline("uq_plus_sl3")


@pytest.fixture(scope="session")
def so5():
    return pipeline("uq_plus_so5")


@pytest.fixture
def rng(request):
    return make_rng(request.node.name)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
