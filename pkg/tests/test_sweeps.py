import numpy as np
import pytest

from qdchain.sweeps import COLUMNS, SweepSpec, apply_axis, measure, run_sweep

from conftest import chain

W_N123 = np.sqrt(2) / 3


def test_v_ratio_one_is_w_state(w_config):
    row = run_sweep(SweepSpec("V_ratio", 0.5, 1.5, 3, w_config))[1]
    assert row["axis"] == 1.0
    assert row["p1"] == pytest.approx(row["p2"], rel=1e-10)
    assert row["p3"] == pytest.approx(row["p2"], rel=1e-10)
    assert row["N123"] == pytest.approx(W_N123, abs=1e-10)


def test_rows_in_axis_order_and_complete(w_config):
    spec = SweepSpec("V_ratio", 0.2, 5.0, 25, w_config)
    rows = run_sweep(spec, workers=4)
    assert [r["axis"] for r in rows] == list(spec.values)
    assert all(set(r) == set(COLUMNS) for r in rows)
    assert rows == run_sweep(spec)


def test_delta3_pair_selection(w_config):
    row = run_sweep(SweepSpec("delta3_over_delta1", 1.0, 10.0, 2, w_config))[-1]
    assert row["C12"] > 0.95
    assert row["C13"] < 0.2 and row["C23"] < 0.2


def test_gamma_scale_keeps_phases(w_config):
    for row in run_sweep(SweepSpec("gamma_scale", 0.05, 2.0, 40, w_config)):
        assert row["phi2"] == pytest.approx(row["phi1"], abs=1e-8)
        assert row["phi3"] == pytest.approx(row["phi1"], abs=1e-8)
        assert row["N123"] > 0


def test_gamma_scale_keeps_baseline_ratios():
    base = chain(delta=0.002, gamma=[1.0, 2.0, 4.0])
    c = apply_axis(base, "gamma_scale", 0.5)
    np.testing.assert_allclose(c.dissipations, [1.0, 2.0, 4.0])


def test_spacing_phase_axis(w_config):
    c = apply_axis(w_config, "spacing_phase", 0.25)
    assert c.k * (c.positions[2] - c.positions[1]) == pytest.approx(np.pi / 2, rel=1e-9)
    assert c.positions[1] == w_config.positions[1]


def test_singular_point_flagged():
    base = chain(delta=0.002)
    rows = run_sweep(SweepSpec("delta_ratio", -1.0, 1.0, 3, base))
    assert [r["status"] for r in rows] == ["ok", "singular", "ok"]
    assert all(rows[1][c] is None for c in COLUMNS[1:-1])


def test_invalid_point_flagged(w_config):
    rows = run_sweep(SweepSpec("V_ratio", -1.0, 1.0, 3, w_config))
    assert rows[0]["status"] == "NegativeCoupling"
    assert rows[2]["status"] == "ok"


def test_measure_matches_components(w_config):
    m = measure(w_config)
    assert m["C12"] == pytest.approx(2 / 3, abs=1e-10)
    assert m["t_re"] ** 2 + m["t_im"] ** 2 + m["r_re"] ** 2 + m["r_im"] ** 2 == pytest.approx(1, abs=1e-10)


@pytest.mark.parametrize("kwargs", [
    dict(axis="nope", lo=0, hi=1, points=3),
    dict(axis="V_ratio", lo=1, hi=1, points=3),
    dict(axis="V_ratio", lo=0, hi=1, points=1),
])
def test_spec_validation(w_config, kwargs):
    with pytest.raises(ValueError):
        SweepSpec(fixed=w_config, **kwargs)


def test_spec_needs_three_emitters():
    with pytest.raises(ValueError):
        SweepSpec("V_ratio", 0, 1, 3, chain(phases=(0, 1)))
