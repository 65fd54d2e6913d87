"""
Exact MPS for qubit and spin-s Dicke states
===========================================

Contracts the closed-form bond matrices and compares with the dense states.
Also shows the left-canonicity residual per site, before and after the
unit-diagonal correction, and the translationally invariant chain.
"""

import numpy as np

from dickemps import contract, dicke_state, spin_dicke_state
from dickemps.mps import canonicity_residuals, qubit_chain, spin_chain, ti_chain

n, k = 6, 3
chain = qubit_chain(n, k)
print(f"qubit chain n={n}, k={k}: chi = {chain.chi}")
print("A_1^0 =\n", chain.site(1)[0].real.round(4))
print("A_1^1 =\n", chain.site(1)[1].real.round(4))

err = np.max(np.abs(contract(chain).amplitudes - dicke_state(n, k).amplitudes))
print("contraction error:", err)

print("canonicity residual per site (plain): ", np.round(canonicity_residuals(chain), 12))
strict = qubit_chain(n, k, strict=True)
print("canonicity residual per site (strict):", np.round(canonicity_residuals(strict), 12))

###############################################################################
# Spin-s: the bond dimension stays k + 1 whatever the spin.

for two_s in (1, 2, 3, 4):
    chain = spin_chain(4, 2, two_s)
    err = np.max(np.abs(contract(chain).amplitudes - spin_dicke_state(4, 2, two_s).amplitudes))
    print(f"two_s={two_s}: d={chain.d}, chi={chain.chi}, contraction error {err:.1e}")

###############################################################################
# Translationally invariant chain: right state up to normalization, not canonical.

ti = ti_chain(4, 2, 2)
state = contract(ti)
err = np.max(np.abs(state.amplitudes / state.norm - spin_dicke_state(4, 2, 2).amplitudes))
print(f"TI chain: norm before normalizing {state.norm:.4f}, error after {err:.1e}")
print("TI residuals:", np.round(canonicity_residuals(ti), 4))
