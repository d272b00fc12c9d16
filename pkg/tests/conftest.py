"""Collects acceptance outcomes and prints one PASS/FAIL line per criterion at the end."""

_acceptance = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    entry = _acceptance.setdefault(number, {"title": title, "passed": True, "seconds": 0.0})
    if call.when == "call":
        entry["seconds"] += call.duration
    if call.excinfo is not None and not call.excinfo.errisinstance(KeyboardInterrupt):
        entry["passed"] = False


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        e = _acceptance[number]
        status = "PASS" if e["passed"] else "FAIL"
        terminalreporter.write_line(f"{status}  {number:>2}. {e['title']}  ({e['seconds']:.2f}s)")
