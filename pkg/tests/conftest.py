import pytest

from hocat.corpus import corpus
from hocat.fincat import full_subcategory, walking_arrow, walking_iso

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def cats():
    return corpus()


@pytest.fixture
def E():
    return walking_arrow()


@pytest.fixture
def D():
    return walking_iso()


@pytest.fixture
def C_point(D):
    C = full_subcategory(D, ["x"])
    C.name = "C"
    return C


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
