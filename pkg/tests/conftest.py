import pytest
from hypothesis import HealthCheck, settings

from qhsuper.foundations import preset

settings.register_profile("repo", deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

PRESET_NAMES = ["A1", "A1odd", "A2", "B2odd"]

ACCEPTANCE_LINES = []


@pytest.fixture(params=PRESET_NAMES)
def datum(request):
    return preset(request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
