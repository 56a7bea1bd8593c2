"""Line-oriented ``key = value`` configuration files.

Example::

    # three dots one wavelength apart
    [photon]
    k = 10000
    shape = decay
    tau = 1/3 /Gwg

    [grid]
    t_start = 0
    t_stop = 10
    t_points = 2001

    [emitter.1]
    V = 1
    delta = 0.001 Gwg

    [emitter.2]
    V = 1
    delta = 0.001 Gwg
    spacing_phase = 1

Rates (``delta``, ``gamma``) accept the suffix ``Gwg`` meaning multiples of
emitter 1's waveguide rate ``2 V_1**2 / v_g``; times and lengths accept
``/Gwg`` meaning multiples of ``1 / Gamma_wg1`` (lengths: ``v_g / Gamma_wg1``).
Numbers may be written as fractions, e.g. ``1/3``.  An emitter is placed with
exactly one of ``position`` (length), ``phase`` (``k d / 2 pi``) or
``spacing_phase`` (``k (d_j - d_{j-1}) / 2 pi``); emitter 1 defaults to 0.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .dynamics import WaveformSpec, default_times
from .errors import ConfigParseError, MissingSection, UnknownKey, ValidationError
from .model import ChainConfig, EmitterParams, validate

_SECTION = re.compile(r"^\[\s*([A-Za-z_]+)(?:\.(\d+))?\s*\]$")
_NUMBER = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_VALUE = re.compile(rf"^({_NUMBER})(?:\s*/\s*({_NUMBER}))?\s*(/\s*Gwg|Gwg)?$")

RATE, INVRATE, PLAIN, TEXT, COUNT = "rate", "invrate", "plain", "text", "count"

_EMITTER_KEYS = {
    "V": PLAIN, "delta": RATE, "gamma": RATE,
    "position": INVRATE, "phase": PLAIN, "spacing_phase": PLAIN,
}
_PHOTON_KEYS = {"k": PLAIN, "v_g": PLAIN, "shape": TEXT, "tau": INVRATE, "x0": INVRATE}
_GRID_KEYS = {"t_start": INVRATE, "t_stop": INVRATE, "t_points": COUNT}


@dataclass
class GridSpec:
    t_start: float | None = None
    t_stop: float | None = None
    t_points: int = 2001

    def times(self, config, waveform) -> np.ndarray:
        auto = default_times(config, waveform, self.t_points)
        start = auto[0] if self.t_start is None else self.t_start
        stop = auto[-1] if self.t_stop is None else self.t_stop
        return np.linspace(start, stop, self.t_points)


@dataclass
class ParsedConfig:
    chain: ChainConfig
    waveform: WaveformSpec
    grid: GridSpec = field(default_factory=GridSpec)


@dataclass
class _Value:
    number: float | str
    unit: str | None
    line: int


def _parse_value(raw: str, kind: str, lineno: int) -> _Value:
    if kind == TEXT:
        return _Value(raw, None, lineno)
    m = _VALUE.match(raw)
    if not m:
        raise ConfigParseError(lineno, f"cannot read a number from {raw!r}")
    num = float(m.group(1))
    if m.group(2) is not None:
        den = float(m.group(2))
        if den == 0:
            raise ConfigParseError(lineno, "division by zero")
        num /= den
    unit = m.group(3)
    if unit is not None:
        unit = "/Gwg" if unit.startswith("/") else "Gwg"
        allowed = {RATE: "Gwg", INVRATE: "/Gwg"}.get(kind)
        if unit != allowed:
            raise ConfigParseError(lineno, f"unit {unit!r} not allowed here")
    if kind == COUNT:
        if unit is not None or num != int(num) or num < 2:
            raise ConfigParseError(lineno, f"expected an integer >= 2, got {raw!r}")
        num = int(num)
    return _Value(num, unit, lineno)


def _sections(text: str):
    sections: dict[tuple, dict[str, _Value]] = {}
    current = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        m = _SECTION.match(line)
        if m:
            name, idx = m.group(1), m.group(2)
            if name == "emitter":
                if idx is None or int(idx) < 1:
                    raise ConfigParseError(lineno, "emitter sections are named [emitter.N] with N >= 1")
                current = ("emitter", int(idx))
            elif name in ("photon", "grid") and idx is None:
                current = (name,)
            else:
                raise ConfigParseError(lineno, f"unknown section [{line[1:-1].strip()}]")
            if current in sections:
                raise ConfigParseError(lineno, f"duplicate section {line}")
            sections[current] = {}
            continue
        if "=" not in line:
            raise ConfigParseError(lineno, f"expected 'key = value', got {line!r}")
        if current is None:
            raise ConfigParseError(lineno, "key outside of any section")
        key, raw = (s.strip() for s in line.split("=", 1))
        keys = {"emitter": _EMITTER_KEYS, "photon": _PHOTON_KEYS, "grid": _GRID_KEYS}[current[0]]
        if key not in keys:
            raise UnknownKey(lineno, f"unknown key {key!r} in [{'.'.join(map(str, current))}]")
        if key in sections[current]:
            raise ConfigParseError(lineno, f"duplicate key {key!r}")
        sections[current][key] = _parse_value(raw, keys[key], lineno)
    return sections


def parse_config(text: str) -> ParsedConfig:
    """Parse configuration text into a chain, a waveform and a time grid.

    Raises:
        ConfigParseError: on malformed input, with the offending line number.
        UnknownKey: for a key the section does not define.
        MissingSection: without ``[photon]`` or any ``[emitter.N]``.
    """
    sections = _sections(text)
    if ("photon",) not in sections:
        raise MissingSection(None, "missing [photon] section")
    idx = sorted(key[1] for key in sections if key[0] == "emitter")
    if not idx:
        raise MissingSection(None, "no [emitter.N] sections")
    if idx != list(range(1, len(idx) + 1)):
        raise MissingSection(None, f"emitter sections must be numbered 1..N, got {idx}")

    photon = sections[("photon",)]
    if "k" not in photon:
        raise ConfigParseError(None, "[photon] needs the carrier wavenumber k")
    k = photon["k"].number
    v_g = photon["v_g"].number if "v_g" in photon else 1.0
    if not v_g > 0:
        raise ConfigParseError(photon["v_g"].line, "v_g must be positive")
    if not k > 0:
        raise ConfigParseError(photon["k"].line, "k must be positive")

    first = sections[("emitter", 1)]
    if "V" not in first:
        raise ConfigParseError(None, "[emitter.1] needs V")
    gwg = 2.0 * first["V"].number ** 2 / v_g

    def resolve(v: _Value, length: bool = False) -> float:
        if v.unit is None:
            return float(v.number)
        if v.unit == "Gwg":
            return float(v.number) * gwg
        if gwg == 0:
            raise ConfigParseError(v.line, "'/Gwg' needs a nonzero V on emitter 1")
        return float(v.number) * (v_g if length else 1.0) / gwg

    emitters = []
    prev = None
    for j in idx:
        sec = sections[("emitter", j)]
        if "V" not in sec:
            raise ConfigParseError(None, f"[emitter.{j}] needs V")
        placed = [key for key in ("position", "phase", "spacing_phase") if key in sec]
        if len(placed) > 1:
            raise ConfigParseError(max(sec[key].line for key in placed),
                                   f"[emitter.{j}] sets both {placed[0]} and {placed[1]}")
        if not placed:
            if j != 1:
                raise ConfigParseError(None, f"[emitter.{j}] needs a position, phase or spacing_phase")
            pos = 0.0
        elif placed[0] == "position":
            pos = resolve(sec["position"], length=True)
        elif placed[0] == "phase":
            pos = 2 * np.pi * sec["phase"].number / k
        else:
            if prev is None:
                raise ConfigParseError(sec["spacing_phase"].line,
                                       "spacing_phase needs a preceding emitter")
            pos = prev + 2 * np.pi * sec["spacing_phase"].number / k
        emitters.append(EmitterParams(
            position=pos,
            coupling=float(sec["V"].number),
            detuning=resolve(sec["delta"]) if "delta" in sec else 0.0,
            dissipation=resolve(sec["gamma"]) if "gamma" in sec else 0.0,
        ))
        prev = pos
    chain = ChainConfig(tuple(emitters), float(k), float(v_g))
    try:
        validate(chain)
    except ValidationError as exc:
        raise ConfigParseError(None, str(exc)) from exc

    if "tau" in photon:
        tau = resolve(photon["tau"])
    elif gwg > 0:
        tau = 1.0 / (3.0 * gwg)
    else:
        tau = 1.0
    shape = photon["shape"].number if "shape" in photon else "decay"
    x0 = resolve(photon["x0"], length=True) if "x0" in photon else chain.positions[0] - 10.0 * v_g * tau
    try:
        waveform = WaveformSpec(shape, tau, float(k), x0)
    except ValueError as exc:
        raise ConfigParseError(photon.get("shape", photon["k"]).line, str(exc)) from exc
    if not x0 < chain.positions[0]:
        raise ConfigParseError(photon["x0"].line, "x0 must lie left of the first emitter")

    grid = GridSpec()
    g = sections.get(("grid",), {})
    if "t_start" in g:
        grid.t_start = resolve(g["t_start"])
    if "t_stop" in g:
        grid.t_stop = resolve(g["t_stop"])
    if "t_points" in g:
        grid.t_points = g["t_points"].number
    if grid.t_start is not None and grid.t_stop is not None and not grid.t_stop > grid.t_start:
        raise ConfigParseError(g["t_stop"].line, "t_stop must exceed t_start")
    return ParsedConfig(chain, waveform, grid)


def read_config(path) -> ParsedConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
