import pytest

from synclab import cerny_family
from synclab.kernels import available_backends

ACCEPTANCE: dict[str, list[bool]] = {}


@pytest.fixture
def c3():
    return cerny_family(3)


@pytest.fixture
def c4():
    return cerny_family(4)


@pytest.fixture(params=sorted(available_backends()))
def backend(request):
    return available_backends()[request.param]


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and rep.when == "call":
        ACCEPTANCE.setdefault(marker.args[0], []).append(rep.passed)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id): acceptance criterion this test checks")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(ACCEPTANCE, key=lambda c: int(c.split()[0])):
        status = "PASS" if all(ACCEPTANCE[cid]) else "FAIL"
        terminalreporter.write_line(f"criterion {cid}: {status}")
