import pytest

from perfscore import AuditCost, GameSpec

ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def make_game():
    def _make(rule, phi, p, q=2.0, c=1.0):
        return GameSpec(rule, phi, AuditCost(q, c), p)
    return _make


@pytest.fixture
def criterion(request):
    """Record one acceptance line; printed in the terminal summary."""
    lines = request.config.stash.setdefault(ACCEPTANCE, [])

    def record(number: int, title: str, passed: bool, detail: str):
        lines.append(f"AC{number:>2} {'PASS' if passed else 'FAIL'}  {title}: {detail}")
        return passed
    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
