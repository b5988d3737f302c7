import numpy as np
import pytest

from swarmselect.dataset import TabularDataset
from swarmselect.rng import RandomSource


@pytest.fixture
def rng():
    return RandomSource(12345)


@pytest.fixture
def separable():
    """Feature 0 splits the classes cleanly; the other 9 columns are noise."""
    gen = np.random.default_rng(7)
    n = 60
    y = np.arange(n) % 2
    x = gen.uniform(0, 1, (n, 10))
    x[:, 0] = np.where(y == 1, gen.uniform(0.8, 1.0, n), gen.uniform(0.0, 0.2, n))
    return TabularDataset(x, y)


ACCEPTANCE_LINES = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        label = getattr(report, "acceptance_label", None)
        for name, value in report.user_properties:
            if name == "criterion":
                label = value
        if label:
            status = "PASS" if report.passed else "FAIL"
            ACCEPTANCE_LINES.append(f"{status}  {label}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
