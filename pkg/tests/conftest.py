import re

_results = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion\[criterion(\d+)\]", report.nodeid)
    if m and (report.when == "call" or report.failed):
        _results[int(m.group(1))] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    from test_acceptance import CRITERIA
    titles = {n: t for n, t, _ in CRITERIA}
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        outcome, duration = _results[n]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {n:>2}: {verdict}  {titles[n]}  ({duration:.1f}s)")
