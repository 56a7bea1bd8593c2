"""
Choosing the entangled pair by detuning
=======================================

Pushing the third dot off resonance leaves the first two in a Bell-like state.
"""
from qdchain import ChainConfig
from qdchain.sweeps import SweepSpec, run_sweep

config = ChainConfig.from_phases([0, 1, 2], couplings=1.0, detunings=0.002, k=1.0e4)
rows = run_sweep(SweepSpec("delta3_over_delta1", -10.0, 10.0, 21, config))

print(f"{'d3/d1':>6} {'C12':>7} {'C13':>7} {'C23':>7}")
for r in rows:
    if r["status"] != "ok":
        print(f"{r['axis']:6.1f} {r['status']}")
        continue
    print(f"{r['axis']:6.1f} {r['C12']:7.4f} {r['C13']:7.4f} {r['C23']:7.4f}")
