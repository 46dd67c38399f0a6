import os

import pytest

_ACCEPTANCE_LINES: list[str] = []


def pytest_collection_modifyitems(config, items):
    if os.environ.get("KEROVPOLY_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="set KEROVPOLY_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def acceptance_report():
    """Callable ``(criterion, description, ok)`` that logs one pass/fail line."""

    def report(number, description: str, ok: bool) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {description}"
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
