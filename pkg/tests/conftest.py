import pytest

from schrodinger_mop.group import GroupParams

CANONICAL = GroupParams(0.7, 0.1, 0.3, 0.5)
SPREAD = [
    CANONICAL,
    GroupParams(0.3, 0.0, 0.9, 0.0),
    GroupParams(1.1, 2.0, 0.5, 0.4),
]


@pytest.fixture
def p():
    return CANONICAL


@pytest.fixture(params=SPREAD, ids=lambda q: f"s{q.sigma}-r{q.rho}-d{q.delta}-t{q.theta}")
def params(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(RESULTS.values(), key=lambda s: (int(s.split()[1].rstrip(":")), " info " in s)):
        terminalreporter.write_line(line)
