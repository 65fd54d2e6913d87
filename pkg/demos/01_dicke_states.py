"""
Dicke states and their Schmidt decompositions
=============================================

Builds qubit, spin-1 and qutrit Dicke states as dense vectors, prints their
nonzero amplitudes, and compares the SVD Schmidt spectrum at the middle cut
with the closed-form hypergeometric coefficients.
"""

import numpy as np

from dickemps import dicke_state, qudit_dicke_state, spin_dicke_state
from dickemps.schmidt import qubit_schmidt_terms, reconstruct_qubit, schmidt_spectrum

###############################################################################
# Amplitudes. Kets are printed as |m_n ... m_1>.


def show(state):
    for index, amp in state.support().items():
        digits = np.base_repr(index, state.d).rjust(state.n, "0")
        print(f"  |{digits}>  {amp.real:+.6f}")


print("|D^4_2>")
show(dicke_state(4, 2))
print("spin-1, n=4, k=2")
show(spin_dicke_state(4, 2, two_s=2))
print("qutrit |D^4(2,1,1)>")
show(qudit_dicke_state(4, (2, 1, 1)))

###############################################################################
# Schmidt spectrum at the middle cut versus the closed-form coefficients.

n, k, cut = 8, 3, 4
state = dicke_state(n, k)
spectrum = schmidt_spectrum(state, cut)
closed = sorted((c for _, c in qubit_schmidt_terms(n, k, cut)), reverse=True)
print(f"\nn={n}, k={k}, cut={cut}: rank {spectrum.rank}")
for svd, exact in zip(spectrum.values, closed):
    print(f"  svd {svd:.12f}   closed form {exact:.12f}")

rebuilt = reconstruct_qubit(n, k, cut)
print("max |rebuilt - direct| =", np.max(np.abs(rebuilt.amplitudes - state.amplitudes)))
