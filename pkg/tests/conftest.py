import pytest

from asdforms.modforms import cusp_form_gamma2, cusp_forms_gamma

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def forms():
    return cusp_forms_gamma(400)


@pytest.fixture(scope="session")
def h2():
    return cusp_form_gamma2(400)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
