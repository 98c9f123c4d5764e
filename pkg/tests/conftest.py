"""Summarize the acceptance criteria as one PASS/FAIL line each."""

ACCEPTANCE_FILE = "test_acceptance.py"
_results: dict = {}


def pytest_runtest_logreport(report):
    if ACCEPTANCE_FILE not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.failed):
        _results[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_results, key=lambda n: int(n.split("_")[1])):
        terminalreporter.write_line(f"{_results[name]}  {name}")
