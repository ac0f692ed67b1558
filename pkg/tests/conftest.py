import re

import pytest

_CRITERIA: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = re.match(r"test_criterion_(\d+)", item.name)
    if not m or rep.when != "call" and not rep.failed:
        return
    num = int(m.group(1))
    doc = (item.function.__doc__ or "").strip().splitlines()[0]
    status = "PASS" if rep.passed else "SKIP" if rep.skipped else "FAIL"
    if rep.when == "call" or num not in _CRITERIA:
        _CRITERIA[num] = (status, doc)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        status, doc = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {num}: {status}  {doc}")
