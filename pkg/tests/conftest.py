import pytest

from tripletindex import IndexConfig, IndexFamily, TripletIndex

SAMPLE_KEYS = ("ABCDA", "ADCDB", "CCDA", "BCDAAD")


@pytest.fixture
def abcd():
    return IndexConfig("ABCD", 6)


@pytest.fixture
def sample(abcd):
    idx = TripletIndex(abcd)
    for key in SAMPLE_KEYS:
        idx.insert(key)
    return idx


@pytest.fixture(params=["list", "tree"])
def sample_family(request, abcd):
    fam = IndexFamily(abcd, request.param)
    for key in SAMPLE_KEYS:
        fam.insert(key)
    return fam


_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        _acceptance[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    import test_acceptance

    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in _acceptance.items():
        name = nodeid.rsplit("::", 1)[-1]
        label = test_acceptance.CRITERIA.get(name, name)
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {label}")
