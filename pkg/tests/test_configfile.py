import numpy as np
import pytest

from qdchain.configfile import parse_config, read_config
from qdchain.errors import ConfigParseError, MissingSection, UnknownKey

from pathlib import Path

DATA = Path(__file__).parent / "data"

MINIMAL = """
[photon]
k = 5

[emitter.1]
V = 1
"""


def test_minimal_single_emitter():
    parsed = parse_config(MINIMAL)
    assert parsed.chain.n == 1
    assert parsed.chain.waveguide_rates[0] == 2.0
    assert parsed.chain.positions[0] == 0.0
    assert parsed.waveform.shape == "exponential_decay"
    assert parsed.waveform.tau == pytest.approx(1 / 6)
    assert parsed.waveform.x0 < 0


def test_gwg_units():
    text = MINIMAL.replace("V = 1", "V = 3\ndelta = 0.001 Gwg\ngamma = 1/2 Gwg") + "\n[emitter.2]\nV = 1\nposition = 2 /Gwg\n"
    c = parse_config(text).chain
    assert c.detunings[0] == pytest.approx(0.018)
    assert c.dissipations[0] == pytest.approx(9.0)
    assert c.detunings[1] == 0.0
    assert c.positions[1] == pytest.approx(2 / 18)


def test_times_in_inverse_rate():
    text = MINIMAL.replace("k = 5", "k = 5\ntau = 1/3 /Gwg") + "[grid]\nt_stop = 4 /Gwg\nt_start = 0\nt_points = 5\n"
    p = parse_config(text)
    assert p.waveform.tau == pytest.approx(1 / 6)
    np.testing.assert_allclose(p.grid.times(p.chain, p.waveform), [0, 0.5, 1, 1.5, 2])


def test_quarter_wavelength_spacing():
    c = read_config(DATA / "quarter.cfg").chain
    kd = c.k * np.diff(c.positions)
    np.testing.assert_allclose(kd, [np.pi / 2, np.pi / 2], rtol=1e-12)


def test_phase_placement():
    text = MINIMAL + "[emitter.2]\nV = 1\nphase = 1.5\n"
    c = parse_config(text).chain
    assert c.k * c.positions[1] == pytest.approx(3 * np.pi)


@pytest.mark.parametrize("text, line", [
    ("[photon]\nk = 1\ncolour = red\n[emitter.1]\nV = 1\n", 3),
    ("[photon]\nk = 1\n\n[emitter.1]\nV = 1\nmass = 2\n", 6),
])
def test_unknown_key_reports_line(text, line):
    with pytest.raises(UnknownKey) as err:
        parse_config(text)
    assert err.value.line == line


def test_missing_sections():
    with pytest.raises(MissingSection):
        parse_config("[emitter.1]\nV = 1\n")
    with pytest.raises(MissingSection):
        parse_config("[photon]\nk = 1\n")
    with pytest.raises(MissingSection):
        parse_config("[photon]\nk = 1\n[emitter.2]\nV = 1\n")


@pytest.mark.parametrize("text, line", [
    ("[photon]\nk = abc\n[emitter.1]\nV = 1\n", 2),
    ("[photon]\nk = 1\n[emitter.1]\nV = 1\ndelta = 2 /Gwg\n", 5),
    ("[photon]\nk = 1\nk = 2\n[emitter.1]\nV = 1\n", 3),
    ("[photon]\nk = 1\n[emitter.1]\nV = 1\n[emitter.1]\nV = 1\n", 5),
    ("k = 1\n", 1),
    ("[photon]\nk = 1\n[bogus]\n", 3),
    ("[photon]\nk = 1\n[emitter.1]\nV 1\n", 4),
    ("[photon]\nk = 1\nshape = square\n[emitter.1]\nV = 1\n", 3),
    ("[photon]\nk = 1\n[grid]\nt_points = 2.5\n[emitter.1]\nV = 1\n", 4),
    ("[photon]\nk = 1\n[emitter.1]\nV = 1\n[emitter.2]\nV = 1\nphase = 1\nposition = 3\n", 8),
])
def test_malformed_lines(text, line):
    with pytest.raises(ConfigParseError) as err:
        parse_config(text)
    assert err.value.line == line


def test_validation_errors_are_config_errors():
    with pytest.raises(ConfigParseError):
        parse_config("[photon]\nk = 1\n[emitter.1]\nV = -1\n")
    with pytest.raises(ConfigParseError):
        parse_config("[photon]\nk = 1\n[emitter.1]\nV = 1\n[emitter.2]\nV = 1\nposition = 0\n")
    with pytest.raises(ConfigParseError):
        parse_config("[photon]\nk = 1\nx0 = 1\n[emitter.1]\nV = 1\n")


def test_comments_and_blank_lines():
    text = "# header\n\n[photon]  # carrier\nk = 5 # inline\n[emitter.1]\nV = 1\n"
    assert parse_config(text).chain.k == 5.0
