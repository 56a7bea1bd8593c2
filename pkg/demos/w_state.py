"""
Heralding a W state from three identical dots
=============================================

Three equal dots sit one wavelength apart on a waveguide.  A photon is
scattered off the chain; if neither end detector clicks, the dots are left in
the stationary amplitudes ``xi_j`` renormalized to one.
"""
import numpy as np

from qdchain import (ChainConfig, density_from_pure, pairwise_concurrences, project_state,
                     solve_stationary, state_fidelity, tripartite_negativity, w_state)

# units: hbar = v_g = 1, Gamma_wg = 2 V^2 = 2
k = 1.0e4
config = ChainConfig.from_phases([0, 1, 2], couplings=1.0, detunings=0.002, k=k)

sol = solve_stationary(config)
print("excitation |xi_j|^2:", sol.excitation)
print("phases           :", sol.phases)
print("|t|^2 + |r|^2    :", abs(sol.t) ** 2 + abs(sol.r) ** 2)

state = project_state(sol)
print("fidelity with W  :", state_fidelity(state, w_state(3)))

# entanglement of the heralded state
rho = density_from_pure(state)
print("N123             :", tripartite_negativity(rho), "vs", np.sqrt(2) / 3)
print("concurrences     :", pairwise_concurrences(rho))

# detuning the common resonance slightly changes the weight but not the state
for delta in (0.002, 0.02, 0.2):
    s = solve_stationary(config.with_emitters(detuning=np.full(3, delta)))
    print(f"delta = {delta:5}: herald weight {s.excitation.sum():10.4g}, "
          f"fidelity {state_fidelity(project_state(s), w_state(3)):.12f}")
