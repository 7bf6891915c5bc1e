import pytest

from tdlc.amalgam import Letter, modular_context
from tdlc.smallcancel import symmetrize


@pytest.fixture(scope="session")
def ctx():
    return modular_context()


@pytest.fixture(scope="session")
def r237():
    # the (2,3,7) triangle relator (ab^2)^7 written with A = Z/4, B = Z/6
    return tuple([Letter("A", 1), Letter("B", 2)] * 7)


@pytest.fixture(scope="session")
def R237(ctx, r237):
    return symmetrize(ctx, [r237])


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k][1])
