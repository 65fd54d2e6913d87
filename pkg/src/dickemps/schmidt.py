"""Schmidt spectra by SVD, and Dicke states rebuilt from their closed-form Schmidt decompositions.

A cut at ``cut`` separates sites ``cut+1..n`` (left factor, most significant
digits) from sites ``1..cut`` (right factor). With the package's index
convention the left factor is the outer factor of ``np.kron``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dicke import (
    DenseState,
    DomainError,
    dicke_state,
    hypergeom_coeff,
    occupation_vector,
    qudit_dicke_state,
    qudit_schmidt_coeff,
    spin_dicke_state,
    spin_hypergeom_coeff,
)
from .mps import enumerate_sectors

#: Singular values above this count toward the Schmidt rank.
RANK_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class SchmidtSpectrum:
    cut: int
    values: np.ndarray
    tol: float = RANK_TOL

    @property
    def rank(self) -> int:
        return int(np.count_nonzero(self.values > self.tol))

    def to_csv(self, header: bool = True) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if header:
            writer.writerow(["cut", "index", "value"])
        for idx, val in enumerate(self.values):
            writer.writerow([self.cut, idx, repr(float(val))])
        return buf.getvalue()


def schmidt_spectrum(state: DenseState, cut: int, tol: float = RANK_TOL) -> SchmidtSpectrum:
    """Singular values of the ``d^(n-cut) x d^cut`` amplitude matrix, in descending order."""
    if not 1 <= cut <= state.n - 1:
        raise DomainError(f"cut {cut} outside [1, {state.n - 1}]")
    mat = state.amplitudes.reshape(state.d ** (state.n - cut), state.d**cut)
    values = np.linalg.svd(mat, compute_uv=False)
    return SchmidtSpectrum(cut=cut, values=values, tol=tol)


def spectra_to_csv(spectra: Sequence[SchmidtSpectrum]) -> str:
    out = "cut,index,value\n"
    return out + "".join(s.to_csv(header=False) for s in spectra)


def _check_cut(n: int, cut: int) -> None:
    if not 1 <= cut <= n - 1:
        raise DomainError(f"cut {cut} outside [1, {n - 1}]")


def qubit_schmidt_terms(n: int, k: int, cut: int) -> list[tuple[int, float]]:
    """``(j, c_j)`` pairs for ``j`` ones among the rightmost ``cut`` qubits."""
    return [
        (j, hypergeom_coeff(n, k, cut, j))
        for j in range(max(0, k - n + cut), min(k, cut) + 1)
    ]


def spin_schmidt_terms(n: int, k: int, two_s: int, cut: int) -> list[tuple[int, float]]:
    return [
        (j, spin_hypergeom_coeff(n, k, two_s, cut, j))
        for j in range(max(0, k - two_s * (n - cut)), min(k, two_s * cut) + 1)
    ]


def qudit_schmidt_terms(n: int, kvec: Sequence[int], cut: int) -> list[tuple[tuple[int, ...], float]]:
    kv = occupation_vector(kvec, n)
    labeling = enumerate_sectors(n, kv)
    return [(a, qudit_schmidt_coeff(n, kv, cut, a)) for a in labeling.sectors[cut]]


def reconstruct_qubit(n: int, k: int, cut: int) -> DenseState:
    """``sum_j c_j |D^{n-cut}_{k-j}> |D^cut_j>`` as a dense vector."""
    _check_cut(n, cut)
    amps = np.zeros(2**n, dtype=np.complex128)
    for j, c in qubit_schmidt_terms(n, k, cut):
        left = dicke_state(n - cut, k - j).amplitudes
        right = dicke_state(cut, j).amplitudes
        amps += c * np.kron(left, right)
    return DenseState(n, 2, amps)


def reconstruct_spin(n: int, k: int, two_s: int, cut: int) -> DenseState:
    _check_cut(n, cut)
    d = two_s + 1
    amps = np.zeros(d**n, dtype=np.complex128)
    for j, c in spin_schmidt_terms(n, k, two_s, cut):
        left = spin_dicke_state(n - cut, k - j, two_s).amplitudes
        right = spin_dicke_state(cut, j, two_s).amplitudes
        amps += c * np.kron(left, right)
    return DenseState(n, d, amps)


def reconstruct_qudit(n: int, kvec: Sequence[int], cut: int) -> DenseState:
    _check_cut(n, cut)
    kv = occupation_vector(kvec, n)
    d = len(kv)
    amps = np.zeros(d**n, dtype=np.complex128)
    for avec, c in qudit_schmidt_terms(n, kv, cut):
        rest = tuple(k - a for k, a in zip(kv, avec))
        amps += c * np.kron(
            qudit_dicke_state(n - cut, rest).amplitudes,
            qudit_dicke_state(cut, avec).amplitudes,
        )
    return DenseState(n, d, amps)
