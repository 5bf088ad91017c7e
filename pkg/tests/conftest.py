import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_results: dict[int, str] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    n = int(m[1])
    if report.failed:
        _results[n] = "FAIL"
    elif report.when == "call" and report.passed:
        _results.setdefault(n, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for n, label in CRITERIA.items():
        status = _results.get(n, "NOT RUN")
        terminalreporter.write_line(f"criterion {n:2d}: {status:7s} {label}")
    passed = sum(v == "PASS" for v in _results.values())
    terminalreporter.write_line(f"{passed}/{len(CRITERIA)} criteria passed")
