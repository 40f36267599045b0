import numpy as np
import pytest

ACCEPTANCE_LINES = []


def pytest_addoption(parser):
    parser.addoption(
        "--large", action="store_true", default=False,
        help="extend the degeneracy/period checks to N = 400",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--large"):
        return
    skip = pytest.mark.skip(reason="needs --large")
    for item in items:
        if "large" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20231015)


@pytest.fixture
def pi4():
    return np.pi / 4
