"""Shared fixtures plus the acceptance-criteria reporter.

Acceptance tests record one verdict per criterion through the
``criterion`` fixture; the terminal summary then prints a single
PASS/FAIL line for each, whatever the capture settings.
"""
import numpy as np
import pytest

_CRITERIA: dict[int, tuple[str, bool, str]] = {}


def _record(number: int, description: str, passed: bool, detail: str = "") -> None:
    _CRITERIA[number] = (description, bool(passed), detail)


@pytest.fixture
def criterion():
    """Callable (number, description, passed, detail='') -> None."""
    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        description, passed, detail = _CRITERIA[number]
        line = "criterion %2d %s  %s" % (number, "PASS" if passed else "FAIL", description)
        if detail:
            line += "  [%s]" % detail
        terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(987654321)
