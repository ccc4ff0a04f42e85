import json
import pathlib

import pytest

from waringcert import constructor
from waringcert.certifier import certify
from waringcert.decomposition import Decomposition
from waringcert.instances import read_instance

FIXTURES = pathlib.Path(__file__).resolve().parents[1] / "src" / "waringcert" / "fixtures"

# twelve integer points with all weights equal to one: certified identifiable
TWELVE = [[-1960, 7185, 2948, 1986, -7270], [8416, -14232, 8567, 14988, -12297],
          [4210, -11055, -6249, 530, 6066], [-6981, 1313, 6692, 12883, 4597],
          [8211, -5857, 6853, -5758, -1890], [8633, 6895, 14963, 14147, -405],
          [12697, -10281, 10647, 1414, 11296], [-15107, 4696, -6212, 6064, 8777],
          [-14194, -13431, -2768, 6063, -1066], [-687, 7327, 9904, 11696, 10323],
          [-262, -14530, 5673, 10210, 5157], [-5397, 6232, -7867, -10827, -653]]

NONID_SEEDS = (1, 2, 3)


@pytest.fixture(scope="session")
def twelve():
    return Decomposition.build(TWELVE, [1] * 12)


@pytest.fixture(scope="session")
def twelve_verdict(twelve):
    return certify(twelve)


@pytest.fixture(scope="session")
def fixture_path():
    return FIXTURES / "identifiable12.json"


@pytest.fixture(scope="session")
def nonid12():
    return {s: constructor.make_nonidentifiable_12(s) for s in NONID_SEEDS}


@pytest.fixture(scope="session")
def nonid12_verdicts(nonid12):
    return {s: certify(inst.decomposition) for s, inst in nonid12.items()}


@pytest.fixture(scope="session")
def nonid13():
    return constructor.make_nonidentifiable_13(1)


@pytest.fixture(scope="session")
def nonid13_report(nonid13):
    return constructor.linkage_report_13(nonid13)


@pytest.fixture(scope="session")
def nondisjoint13():
    return constructor.make_nondisjoint_13(4)


@pytest.fixture(scope="session")
def nondisjoint13_verdict(nondisjoint13):
    return certify(nondisjoint13.decomposition)


@pytest.fixture(scope="session")
def generic13_verdict():
    return certify(constructor.generic_instance(13, 4).decomposition)


@pytest.fixture(scope="session")
def generic_points():
    return {r: constructor.random_points(r, 100 + r) for r in range(5, 15)}


_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[report.nodeid] = report.outcome


@pytest.hookimpl(trylast=True)
def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid in sorted(_ACCEPTANCE):
        name = nodeid.split("::test_criterion_")[1]
        number, title = name.split("_", 1)
        status = "PASS" if _ACCEPTANCE[nodeid] == "passed" else "FAIL"
        terminalreporter.write_line("criterion %2d: %s - %s" % (int(number), status, title.replace("_", " ")))
