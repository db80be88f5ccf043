from __future__ import annotations

import pytest

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def report():
    """Record the verdict of an acceptance criterion (printed at the end of the run)."""
    def record(number: int, passed: bool, detail: str = "") -> None:
        prev = ACCEPTANCE.get(number)
        ok = passed and (prev is None or prev[0])
        ACCEPTANCE[number] = (ok, detail if not passed or prev is None else prev[1])
        print(f"criterion {number}: {'PASS' if passed else 'FAIL'} {detail}")
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
