import pytest
from hypothesis import HealthCheck, settings

import acceptance_log
from ldforms.field import make_field

settings.register_profile("ldforms", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ldforms")

@pytest.fixture(scope="session")
def F3():
    return make_field(3)


@pytest.fixture(scope="session")
def F9():
    return make_field(3, 2)


@pytest.fixture(scope="session")
def F27():
    return make_field(3, 3)


@pytest.fixture(scope="session")
def lam2_candidates():
    from ldforms.search import search_lspace
    return search_lspace(2, 3)


def pytest_terminal_summary(terminalreporter):
    if not acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acceptance_log.RESULTS):
        terminalreporter.write_line(acceptance_log.line(n))
