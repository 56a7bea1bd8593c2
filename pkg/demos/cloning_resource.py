"""
A W-like resource for cloning
=============================

Doubling the first coupling gives the unequal superposition (2, 1, 1)/sqrt(6).
Sweeping V1/V2 shows where the tripartite negativity peaks.
"""
import numpy as np

from qdchain import ChainConfig, make_state, project_state, solve_stationary, state_fidelity
from qdchain.sweeps import SweepSpec, run_sweep

k = 1.0e4
config = ChainConfig.from_phases([0, 1, 2], couplings=[2.0, 1.0, 1.0], detunings=0.002, k=k)
sol = solve_stationary(config)
print("excitation ratio:", sol.excitation / sol.excitation[-1])
print("fidelity with (2,1,1)/sqrt(6):", state_fidelity(project_state(sol), make_state([2, 1, 1])))

baseline = config.with_emitters(coupling=np.ones(3))
rows = run_sweep(SweepSpec("V_ratio", 0.2, 5.0, 25, baseline))
print(f"{'V1/V2':>6} {'p1':>10} {'p2':>10} {'N123':>8}")
for r in rows:
    print(f"{r['axis']:6.2f} {r['p1']:10.4g} {r['p2']:10.4g} {r['N123']:8.4f}")
best = max(rows, key=lambda r: r["N123"])
print("maximum N123 at V1/V2 =", best["axis"])
