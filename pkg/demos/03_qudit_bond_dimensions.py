"""
Qudit Dicke states: sector labels and bond dimensions
=====================================================

Enumerates the occupation sectors on every bond, lists the resulting bond
dimensions for several qutrit occupation vectors, and checks each against
the numerical Schmidt rank at the middle cut.
"""

import numpy as np

from dickemps import contract, enumerate_sectors, qudit_chain, qudit_dicke_state
from dickemps.schmidt import schmidt_spectrum

labeling = enumerate_sectors(4, (2, 1, 1))
for l, sectors in enumerate(labeling.sectors):
    print(f"bond {l}: " + ", ".join(f"{j}:{a}" for j, a in enumerate(sectors)))

print("\n k          n   chi  SVD rank  contraction error")
for kvec in [(1, 1, 1), (1, 1, 2), (1, 1, 3), (1, 2, 2), (2, 2, 2), (1, 3, 3), (2, 3, 3)]:
    n = sum(kvec)
    state = qudit_dicke_state(n, kvec)
    chain = qudit_chain(n, kvec)
    rank = schmidt_spectrum(state, n // 2).rank
    err = np.max(np.abs(contract(chain).amplitudes - state.amplitudes))
    print(f" {str(kvec):10} {n}   {chain.chi:3d}  {rank:8d}  {err:.1e}")
