"""Shared test plumbing.

The acceptance tests report one PASS/FAIL line per criterion; those
lines are echoed immediately and repeated in a summary section at the
end of the run so they are visible regardless of capture settings.
"""

import pytest
from hypothesis import settings

settings.register_profile("pkg", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("pkg")

_CRITERIA: dict = {}


def record_criterion(n: int, ok: bool, detail: str) -> None:
    _CRITERIA[n] = (ok, detail)
    print(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} - {detail}")


@pytest.fixture
def record():
    return record_criterion


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        ok, detail = _CRITERIA[n]
        terminalreporter.write_line(
            f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} - {detail}"
        )
