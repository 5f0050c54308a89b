import pytest

# criterion number -> (verdict, note); filled by test_acceptance
CRITERIA = {}


def record(n, ok, note=""):
    CRITERIA[n] = ("PASS" if ok else "FAIL", note)
    print(f"criterion {n}: {CRITERIA[n][0]}" + (f" ({note})" if note else ""))


@pytest.fixture
def record_criterion():
    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        verdict, note = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {verdict}" + (f" ({note})" if note else ""))
