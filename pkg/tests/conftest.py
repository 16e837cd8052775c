"""Shared pytest wiring.

The acceptance tests register one line each; we echo them as a block at the
end of the run so the per-criterion verdicts are visible in plain `pytest -v`
output without digging through captured stdout.
"""

import pytest

_CRITERION_LINES: list[tuple[int, str]] = []


class CriterionReport:
    def add(self, num: int, name: str, ok: bool, detail: str = "") -> None:
        verdict = "PASS" if ok else "FAIL"
        line = f"criterion {num} ({name}): {verdict}"
        if detail:
            line += f"  [{detail}]"
        _CRITERION_LINES.append((num, line))


@pytest.fixture(scope="session")
def criterion_report() -> CriterionReport:
    return CriterionReport()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERION_LINES:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for _, line in sorted(_CRITERION_LINES):
        terminalreporter.write_line(line)
