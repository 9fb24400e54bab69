import pytest

_ACCEPTANCE = []


@pytest.fixture
def record():
    """Record one acceptance line: ``record(id, passed, detail)``."""

    def _record(cid: str, passed: bool, detail: str = "") -> None:
        _ACCEPTANCE.append((cid, passed, detail))

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid, passed, detail in sorted(_ACCEPTANCE, key=lambda x: int(x[0].split()[0])):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {cid}: {detail}")
