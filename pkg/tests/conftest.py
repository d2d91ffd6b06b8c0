import pytest

from egr5.fixtures import load_fixtures, run_pipeline

_criteria: dict[str, str] = {}


@pytest.fixture(scope="session")
def tables():
    return load_fixtures()


@pytest.fixture(scope="session")
def table1_rows(tables):
    return tables[0]


@pytest.fixture(scope="session")
def table2_rows(tables):
    return tables[1]


@pytest.fixture(scope="session")
def pipeline(table1_rows):
    return run_pipeline(table1_rows)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    if name.startswith("test_criterion_"):
        _criteria[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda n: int(n.split("_")[2])):
        terminalreporter.write_line(f"{_criteria[name]}  {name}")
