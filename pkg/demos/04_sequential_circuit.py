"""
Sequential preparation circuit
==============================

Synthesizes the ancilla-controlled circuit for |D^n_k>, simulates it from
|0>|0...0>, and reports gate count and preparation fidelity. The circuit is
also exported as JSON.
"""

import json

import numpy as np

from dickemps.circuit import build_circuit, depth, preparation_fidelity, simulate

c = build_circuit(4, 2)
for g in c.gates[:6]:
    print(g)
print("...")

print("\n n  k  gates  3k(n+1-k)  fidelity")
for n, k in [(4, 2), (6, 3), (8, 2), (10, 5), (12, 6)]:
    c = build_circuit(n, k)
    final = simulate(c)
    print(f"{n:2d} {k:2d} {depth(c):6d} {3 * k * (n + 1 - k):10d}  {preparation_fidelity(final):.15f}")

###############################################################################
# The swap-based variant uses X^(l,l+1) on the ancilla instead of +1/-1 shifts.

a = simulate(build_circuit(8, 3)).amplitudes
b = simulate(build_circuit(8, 3, use_swap=True)).amplitudes
print("\nswap variant max difference:", np.max(np.abs(a - b)))

print(json.dumps(json.loads(build_circuit(2, 1).to_json()), indent=1)[:400], "...")
