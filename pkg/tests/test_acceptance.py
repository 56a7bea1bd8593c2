"""Acceptance criteria, each at its stated tolerance.

Every test records one line that is printed in the terminal summary.
"""
import numpy as np
import pytest

from qdchain import (
    ChainConfig,
    WaveformSpec,
    density_from_pure,
    detect_sudden_death,
    evolve,
    make_state,
    negativity,
    pairwise_concurrences,
    peak_success_probability,
    project_state,
    schmidt_negativity,
    solve_stationary,
    state_fidelity,
    tripartite_negativity,
    w_state,
)
from qdchain.sweeps import SweepSpec, run_sweep

from conftest import K0, chain, record

TAU = 1 / 6  # 1 / (3 Gamma_wg) at V = 1
X0 = -2.0
TIMES = np.linspace(0, 10, 1001)


def test_1_w_state_generation(w_config):
    sol = solve_stationary(w_config)
    fid = state_fidelity(project_state(sol), w_state(3))
    spread = np.ptp(sol.phases)
    ok = fid >= 1 - 1e-10 and spread <= 1e-10
    record(1, "W-state generation", ok, f"1-F = {1 - fid:.2e}, phase spread = {spread:.2e}")
    assert ok


def test_2_cloning_resource():
    cfg = chain(V=[2.0, 1.0, 1.0], delta=0.002)
    sol = solve_stationary(cfg)
    p = sol.excitation
    ratio = p / p[2]
    target = make_state([2, 1, 1])
    fid = state_fidelity(project_state(sol), target)
    err = np.max(np.abs(ratio - [4, 1, 1]))
    ok = err <= 1e-8 and fid >= 1 - 1e-8
    record(2, "cloning resource 4:1:1", ok, f"ratio error = {err:.2e}, 1-F = {1 - fid:.2e}")
    assert ok


def test_3_w_state_measures(w_config):
    rho = density_from_pure(w_state(3))
    n123 = tripartite_negativity(rho)
    conc = pairwise_concurrences(rho)
    n_err = abs(n123 - np.sqrt(2) / 3)
    c_err = max(abs(c - 2 / 3) for c in conc.values())
    rows = run_sweep(SweepSpec("V_ratio", 0.2, 5.0, 49, w_config))
    best = max(rows, key=lambda r: r["N123"])
    ok = n_err <= 1e-8 and c_err <= 1e-8 and best["axis"] == pytest.approx(1.0, abs=1e-12)
    record(3, "W-state measures", ok,
           f"N123 error = {n_err:.2e}, C error = {c_err:.2e}, sweep max at V1/V2 = {best['axis']:.4g}")
    assert ok


def test_4_flux_conservation(rng):
    worst = 0.0
    for i in range(500):
        n = (1, 2, 3, 5)[i % 4]
        d = np.cumsum(rng.uniform(0.05, 3.0, n)) - 1.0
        cfg = ChainConfig.from_arrays(d, rng.uniform(0.1, 2.0, n), rng.uniform(-3, 3, n), 0.0,
                                      k=float(rng.uniform(0.5, 20.0)))
        sol = solve_stationary(cfg)
        worst = max(worst, abs(abs(sol.t) ** 2 + abs(sol.r) ** 2 - 1))
    single = solve_stationary(ChainConfig.from_arrays([0.3], [1.3], [0.0], [0.0], k=7.0))
    ok = worst <= 1e-10 and abs(single.t) <= 1e-10
    record(4, "flux conservation", ok, f"max ||t|^2+|r|^2-1| = {worst:.2e}, resonant |t| = {abs(single.t):.2e}")
    assert ok


def test_5_negativity_oracles(rng):
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 6))
        c = rng.normal(size=n) + 1j * rng.normal(size=n)
        state = make_state(c)
        rho = density_from_pure(state)
        for q in range(1, n + 1):
            worst = max(worst, abs(negativity(rho, q) - schmidt_negativity(state, q)))
    ok = worst <= 1e-8
    record(5, "negativity oracle equivalence", ok, f"max difference = {worst:.2e}")
    assert ok


def test_6_dissipation(w_config):
    rows = run_sweep(SweepSpec("gamma_scale", 2.0 / 50, 2.0, 50, w_config))
    spread = max(np.ptp([r["phi1"], r["phi2"], r["phi3"]]) for r in rows)
    n_min = min(r["N123"] for r in rows)
    ok = spread <= 1e-8 and n_min > 0
    record(6, "dissipation keeps phases and N123", ok, f"phase spread = {spread:.2e}, min N123 = {n_min:.4g}")
    assert ok


def test_7_pair_selection():
    cfg = chain(delta=[0.002, 0.002, 0.02])
    conc = pairwise_concurrences(density_from_pure(project_state(solve_stationary(cfg))))
    ok = conc[(1, 2)] >= 0.95 and conc[(1, 3)] <= 0.2 and conc[(2, 3)] <= 0.2
    record(7, "pair selection", ok,
           f"C12 = {conc[(1, 2)]:.4f}, C13 = {conc[(1, 3)]:.4f}, C23 = {conc[(2, 3)]:.4f}")
    assert ok


def test_8_generation_probability(w_config):
    growth = peak_success_probability(w_config, WaveformSpec("growth", TAU, K0, X0))
    decay = peak_success_probability(w_config, WaveformSpec("decay", TAU, K0, X0))
    ok = abs(growth - 0.2) <= 0.05 and abs(decay - 0.1) <= 0.05
    record(8, "generation probability", ok, f"growth = {growth:.4f} (0.2+-0.05), decay = {decay:.4f} (0.1+-0.05)")
    assert ok


def test_9_sudden_death(w_config):
    quarter = chain(phases=(0, 0.25, 0.5), delta=0.002)
    wf = WaveformSpec("decay", TAU, K0, X0)
    s = evolve(quarter, wf, TIMES, refine_minima=True)
    n13 = len(detect_sudden_death(s, (1, 3)))
    n23 = len(detect_sudden_death(s, (2, 3)))
    both = (s.excitation[:, 2] < 1e-3) & (s.concurrence[(1, 3)] < 1e-3) & (s.concurrence[(2, 3)] < 1e-3)
    simultaneous = bool(np.any(both & (s.total > 1e-3)))
    w = evolve(w_config, wf, TIMES, refine_minima=True)
    n_w = sum(len(detect_sudden_death(w, p)) for p in w.pairs)
    ok = n13 >= 1 and n23 >= 1 and simultaneous and n_w == 0
    record(9, "sudden death", ok,
           f"events (1,3) = {n13}, (2,3) = {n23}, simultaneous zero = {simultaneous}, one-wavelength events = {n_w}")
    assert ok


def test_10_dynamics_convergence(w_config):
    configs = [w_config, chain(phases=(0, 0.25, 0.5), delta=0.002)]
    wf = WaveformSpec("decay", TAU, K0, X0)
    worst, top = 0.0, 0.0
    for cfg in configs:
        base = evolve(cfg, wf, TIMES)
        fine = evolve(cfg, wf, TIMES, points=2 * base.grid_points - 1)
        diff = [np.abs(fine.excitation - base.excitation).max()]
        diff += [np.abs(fine.concurrence[p] - base.concurrence[p]).max() for p in base.pairs]
        worst = max(worst, *diff)
        for shape in ("decay", "growth"):
            top = max(top, evolve(cfg, WaveformSpec(shape, TAU, K0, X0), TIMES).total.max())
    ok = worst < 1e-3 and top <= 1 + 1e-3
    record(10, "dynamics convergence", ok, f"max change on doubling = {worst:.2e}, max total = {top:.4f}")
    assert ok
