"""Invariant checks for a single Dicke instance, grouped by family.

Each ``check_*`` function returns a list of :class:`Check` records and never
raises on a failed invariant; the caller decides what to do with failures.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import circuit as circ
from . import mps
from . import schmidt
from .dicke import (
    ATOL,
    DenseState,
    dicke_state,
    max_deviation,
    occupation_vector,
    qudit_dicke_state,
    spin_dicke_state,
    spin_lowering_oracle,
)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    value: float
    tol: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}  value={self.value:.3e}  tol={self.tol:.0e}"


def _le(name: str, value: float, tol: float) -> Check:
    return Check(name, bool(value <= tol), float(value), tol)


def _eq(name: str, got: int, want: int) -> Check:
    return Check(f"{name} (got {got}, want {want})", got == want, float(abs(got - want)), 0.0)


def _spectrum_mismatch(state: DenseState, cut: int, coeffs: Sequence[float]) -> float:
    values = schmidt.schmidt_spectrum(state, cut).values
    want = np.zeros(max(len(values), len(coeffs)))
    want[: len(coeffs)] = sorted(coeffs, reverse=True)
    got = np.zeros_like(want)
    got[: len(values)] = values
    return float(np.max(np.abs(got - want)))


def _transposition_deviation(state: DenseState) -> float:
    worst = 0.0
    for a, b in itertools.combinations(range(1, state.n + 1), 2):
        perm = list(range(1, state.n + 1))
        perm[a - 1], perm[b - 1] = b, a
        worst = max(worst, max_deviation(state, state.permute_sites(perm)))
    return worst


def _stripe_violation(chain: mps.MpsChain) -> float:
    worst = 0.0
    jj, jp = np.meshgrid(np.arange(chain.chi), np.arange(chain.chi))
    for mats in chain.sites:
        for m in range(chain.d):
            off = np.abs(mats[m][jp != jj + m])
            worst = max(worst, float(off.max()) if off.size else 0.0)
    return worst


def _schmidt_checks(
    label: str,
    state: DenseState,
    reconstruct: Callable[[int], DenseState],
    coeffs: Callable[[int], Sequence[float]],
) -> list[Check]:
    checks = []
    if state.n < 2:
        return checks
    recon = max(max_deviation(reconstruct(cut), state) for cut in range(1, state.n))
    checks.append(_le(f"{label}: Schmidt reconstruction at every cut", recon, ATOL))
    spec = max(_spectrum_mismatch(state, cut, coeffs(cut)) for cut in range(1, state.n))
    checks.append(_le(f"{label}: SVD spectrum equals closed-form coefficients", spec, schmidt.RANK_TOL))
    return checks


def check_qubit(n: int, k: int) -> list[Check]:
    label = f"qubit n={n} k={k}"
    target = dicke_state(n, k)
    chain = mps.qubit_chain(n, k)
    strict = mps.qubit_chain(n, k, strict=True)
    checks = [
        _le(f"{label}: state normalized", abs(target.norm - 1.0), ATOL),
        _le(f"{label}: permutation symmetry", _transposition_deviation(target), ATOL),
        _le(f"{label}: MPS contraction equals Dicke state", max_deviation(mps.contract(chain), target), ATOL),
        _le(f"{label}: strict MPS contraction equals Dicke state", max_deviation(mps.contract(strict), target), ATOL),
        _le(f"{label}: strict MPS canonicity residual", max(mps.canonicity_residuals(strict)), ATOL),
        _le(f"{label}: stripe structure", _stripe_violation(chain), 0.0),
    ]
    gsum = 0.0
    for i in range(1, n + 1):
        for j in range(k + 1):
            if k - j <= n - i:
                g = mps.gamma_qubit(n, k, i, j, 0) ** 2 + mps.gamma_qubit(n, k, i, j, 1) ** 2
                gsum = max(gsum, abs(g - 1.0))
    checks.append(_le(f"{label}: sum_m gamma^2 = 1", gsum, ATOL))
    checks += _schmidt_checks(
        label,
        target,
        lambda cut: schmidt.reconstruct_qubit(n, k, cut),
        lambda cut: [c for _, c in schmidt.qubit_schmidt_terms(n, k, cut)],
    )
    if n >= 2:
        rank = schmidt.schmidt_spectrum(target, n // 2).rank
        checks.append(_eq(f"{label}: SVD rank at middle cut equals chi", rank, chain.chi))
    checks += check_circuit(n, k)
    return checks


def check_circuit(n: int, k: int) -> list[Check]:
    label = f"circuit n={n} k={k}"
    c = circ.build_circuit(n, k)
    final = circ.simulate(c)
    alt = circ.simulate(circ.build_circuit(n, k, use_swap=True))
    angle_dev = 0.0
    for g in c.gates:
        if g.kind == circ.ROT:
            i, l = g.block
            half = g.angle / 2
            angle_dev = max(
                angle_dev,
                abs(np.cos(half) - mps.gamma_qubit(n, k, i, l, 0)),
                abs(np.sin(half) - mps.gamma_qubit(n, k, i, l, 1)),
            )
    return [
        _eq(f"{label}: gate count 3k(n+1-k)", len(c), 3 * k * (n + 1 - k)),
        _le(f"{label}: preparation infidelity", 1.0 - circ.preparation_fidelity(final), ATOL),
        _le(f"{label}: norm drift", abs(final.norm - 1.0), ATOL),
        _le(f"{label}: X^(l,l+1) variant agrees", float(np.max(np.abs(alt.amplitudes - final.amplitudes))), ATOL),
        _le(f"{label}: rotation angles match MPS gammas", angle_dev, 1e-14),
    ]


def check_spin(n: int, k: int, two_s: int) -> list[Check]:
    label = f"spin n={n} k={k} two_s={two_s}"
    target = spin_dicke_state(n, k, two_s)
    chain = mps.spin_chain(n, k, two_s)
    checks = [
        _le(f"{label}: state normalized", abs(target.norm - 1.0), ATOL),
        _le(f"{label}: closed form equals lowering oracle", max_deviation(target, spin_lowering_oracle(n, k, two_s)), ATOL),
        _le(f"{label}: MPS contraction equals Dicke state", max_deviation(mps.contract(chain), target), ATOL),
        _le(f"{label}: stripe structure", _stripe_violation(chain), 0.0),
        _eq(f"{label}: bond dimension k+1", chain.chi, k + 1),
    ]
    gsum = 0.0
    for i in range(1, n + 1):
        for j in range(k + 1):
            if k - j <= two_s * (n - i):
                g = sum(mps.gamma_spin(n, k, two_s, i, j, m) ** 2 for m in range(two_s + 1))
                gsum = max(gsum, abs(g - 1.0))
    checks.append(_le(f"{label}: sum_m gamma^2 = 1", gsum, ATOL))
    if k >= 1:
        ti = mps.contract(mps.ti_chain(n, k, two_s))
        ti = DenseState(n, two_s + 1, ti.amplitudes / ti.norm)
        checks.append(_le(f"{label}: normalized TI contraction equals Dicke state", max_deviation(ti, target), ATOL))
    checks += _schmidt_checks(
        label,
        target,
        lambda cut: schmidt.reconstruct_spin(n, k, two_s, cut),
        lambda cut: [c for _, c in schmidt.spin_schmidt_terms(n, k, two_s, cut)],
    )
    if n >= 2:
        # for odd n and k > 2s*floor(n/2) every cut has rank below k+1
        rank = schmidt.schmidt_spectrum(target, n // 2).rank
        want = min(k, two_s * (n // 2)) + 1
        checks.append(_eq(f"{label}: SVD rank at middle cut", rank, want))
        if k <= two_s * (n // 2):
            checks.append(_eq(f"{label}: SVD rank at middle cut equals chi", rank, chain.chi))
    return checks


def check_qudit(n: int, kvec: Sequence[int]) -> list[Check]:
    kv = occupation_vector(kvec, n)
    label = f"qudit n={n} k={kv}"
    target = qudit_dicke_state(n, kv)
    labeling = mps.enumerate_sectors(n, kv)
    chain = mps.qudit_chain(n, kv)
    col_nnz = max(
        int(np.count_nonzero(mats[m], axis=0).max()) for mats in chain.sites for m in range(chain.d)
    )
    gsum = 0.0
    for l in range(1, n + 1):
        for avec in labeling.sectors[l - 1]:
            g = sum(mps.gamma_qudit(n, kv, l, avec, m) ** 2 for m in range(len(kv)))
            gsum = max(gsum, abs(g - 1.0))
    checks = [
        _le(f"{label}: state normalized", abs(target.norm - 1.0), ATOL),
        _le(f"{label}: permutation symmetry", _transposition_deviation(target), ATOL),
        _le(f"{label}: MPS contraction equals Dicke state", max_deviation(mps.contract(chain), target), ATOL),
        _eq(f"{label}: at most one nonzero per column", min(col_nnz, 1), col_nnz),
        _le(f"{label}: sum_m gamma^2 = 1", gsum, ATOL),
        _eq(f"{label}: max sector count sits at floor(n/2)", max(labeling.dims), labeling.chi),
    ]
    checks += _schmidt_checks(
        label,
        target,
        lambda cut: schmidt.reconstruct_qudit(n, kv, cut),
        lambda cut: [c for _, c in schmidt.qudit_schmidt_terms(n, kv, cut)],
    )
    if n >= 2:
        rank = schmidt.schmidt_spectrum(target, n // 2).rank
        checks.append(_eq(f"{label}: SVD rank at middle cut equals chi", rank, chain.chi))
    return checks
