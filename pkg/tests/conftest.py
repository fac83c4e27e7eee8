"""Prints one PASS/FAIL line per acceptance criterion at the end of a run."""

_criteria: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::", 1)[1]
        detail = dict(report.user_properties).get("detail", "")
        _criteria[name] = ("PASS" if report.passed else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, (outcome, detail) in _criteria.items():
        terminalreporter.write_line(f"{outcome}  {name}  {detail}".rstrip())
