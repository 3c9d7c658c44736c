import pytest

from pslet.potentials import AnharmonicOscillator, CoulombPotential, HarmonicOscillator


@pytest.fixture
def aho1():
    return AnharmonicOscillator("0.5", "1")


@pytest.fixture
def harmonic():
    return HarmonicOscillator("0.5")


@pytest.fixture
def coulomb():
    return CoulombPotential(1)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(RESULTS):
            terminalreporter.write_line(line)
