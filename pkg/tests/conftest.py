import numpy as np
import pytest

from qdchain import ChainConfig

K0 = 1.0e4
_ACCEPTANCE = []


def record(number, title, passed, detail=""):
    _ACCEPTANCE.append((number, title, bool(passed), detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(_ACCEPTANCE, key=lambda r: r[0]):
        mark = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{mark}] {number:>4} {title}: {detail}")


def chain(phases=(0, 1, 2), V=1.0, delta=0.0, gamma=0.0, k=K0):
    return ChainConfig.from_phases(phases, V, delta, gamma, k=k)


@pytest.fixture
def w_config():
    # equal couplings, delta = 0.001 Gamma_wg, one wavelength apart
    return chain(delta=0.002)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
