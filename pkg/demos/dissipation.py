"""
Emitter loss
============

Equal loss on every dot lowers the heralding weight, yet the heralded state
keeps equal phases and stays tripartite entangled.
"""
from qdchain import ChainConfig
from qdchain.sweeps import SweepSpec, run_sweep

config = ChainConfig.from_phases([0, 1, 2], couplings=1.0, detunings=0.002, k=1.0e4)
rows = run_sweep(SweepSpec("gamma_scale", 0.1, 2.0, 20, config), workers=4)

print(f"{'G/Gwg':>6} {'Pherald':>10} {'phi1-phi3':>10} {'N123':>8} {'|t|^2':>8}")
for r in rows:
    t2 = r["t_re"] ** 2 + r["t_im"] ** 2
    print(f"{r['axis']:6.2f} {r['Pherald']:10.4g} {r['phi1'] - r['phi3']:10.2e} {r['N123']:8.4f} {t2:8.4f}")
