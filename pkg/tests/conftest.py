import pytest

from mdmorse import io
from oracles import DATA


def load(name):
    return io.load(DATA / name)


@pytest.fixture
def bundle():
    return load


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results):
        terminalreporter.write_line(results[key])
