import re

_criteria: dict[str, list] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+?)(\[.*\])?$", report.nodeid)
    if not m:
        return
    key = f"{int(m.group(1)):2d} {m.group(2).replace('_', ' ')}"
    entry = _criteria.setdefault(key, [True, 0.0])
    if report.failed:
        entry[0] = False
    entry[1] += report.duration


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria):
        ok, seconds = _criteria[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'} ({seconds:.2f}s)")
