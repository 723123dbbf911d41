import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_acceptance = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: exit criteria for the package")


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for item in terminalreporter.config._acceptance_items:
        outcome = _acceptance.get(item.nodeid)
        if outcome is None:
            continue
        label = "PASS" if outcome == "passed" else "FAIL"
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        terminalreporter.write_line(f"{label}  {doc}")


def pytest_collection_modifyitems(config, items):
    config._acceptance_items = [i for i in items if "test_acceptance.py" in i.nodeid]
