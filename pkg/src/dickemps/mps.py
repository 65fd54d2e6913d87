"""Exact matrix product states for qubit, spin-s and qudit Dicke states.

An :class:`MpsChain` holds, for every site ``i = 1..n``, the ``d`` bond
matrices ``A_i^m`` (shape ``(chi, chi)``) together with the boundary vectors.
Amplitudes are ``<L| A_n^{m_n} ... A_1^{m_1} |R>``: the right boundary enters
at site 1 and the left boundary closes the chain at site n.

The qubit and spin-s builders use bond dimension ``k + 1`` with boundaries
``<k|`` and ``|0>``; the qudit builder indexes bonds by occupation sectors and
uses ``<0|``, ``|0>``.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .dicke import (
    DenseState,
    DomainError,
    binomial,
    multinomial,
    occupation_vector,
    qudit_schmidt_coeff,
)


@dataclass(frozen=True, eq=False)
class MpsChain:
    """Open-boundary MPS. ``sites[i-1]`` has shape ``(d, chi, chi)``."""

    n: int
    d: int
    chi: int
    sites: tuple
    left: np.ndarray
    right: np.ndarray

    def __post_init__(self):
        sites = []
        for s, mats in enumerate(self.sites, start=1):
            arr = np.array(mats, dtype=np.complex128)
            if arr.shape != (self.d, self.chi, self.chi):
                raise ValueError(
                    f"site {s}: expected shape {(self.d, self.chi, self.chi)}, got {arr.shape}"
                )
            arr.setflags(write=False)
            sites.append(arr)
        if len(sites) != self.n:
            raise ValueError(f"expected {self.n} sites, got {len(sites)}")
        object.__setattr__(self, "sites", tuple(sites))
        for name in ("left", "right"):
            vec = np.array(getattr(self, name), dtype=np.complex128).reshape(-1)
            if vec.size != self.chi:
                raise ValueError(f"{name} boundary has length {vec.size}, expected {self.chi}")
            vec.setflags(write=False)
            object.__setattr__(self, name, vec)

    def site(self, i: int) -> np.ndarray:
        """Matrices of site ``i`` (1-based)."""
        if not 1 <= i <= self.n:
            raise IndexError(f"site {i} outside [1, {self.n}]")
        return self.sites[i - 1]

    def to_json(self) -> str:
        def pairs(a):
            return [[float(z.real), float(z.imag)] for z in np.asarray(a).reshape(-1)]

        def matrix(a):
            return [pairs(row) for row in a]

        return json.dumps(
            {
                "n": self.n,
                "d": self.d,
                "chi": self.chi,
                "left": pairs(self.left),
                "right": pairs(self.right),
                "sites": [[matrix(a) for a in mats] for mats in self.sites],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "MpsChain":
        obj = json.loads(text)

        def arr(x):
            a = np.asarray(x, dtype=float)
            return a[..., 0] + 1j * a[..., 1]

        return cls(
            n=int(obj["n"]),
            d=int(obj["d"]),
            chi=int(obj["chi"]),
            sites=tuple(arr(s) for s in obj["sites"]),
            left=arr(obj["left"]),
            right=arr(obj["right"]),
        )


def basis_vector(chi: int, j: int) -> np.ndarray:
    vec = np.zeros(chi)
    vec[j] = 1.0
    return vec


# ----------------------------------------------------------------------
# Qubit Dicke states
# ----------------------------------------------------------------------


def _check_qubit_range(n: int, k: int) -> None:
    if n < 1 or k < 0:
        raise DomainError(f"need n >= 1 and k >= 0, got n={n}, k={k}")
    if 2 * k > n:
        raise DomainError(
            f"k={k} > n/2 for n={n}; build the complement state with k -> n-k "
            "and flip every site instead"
        )


def gamma_qubit(n: int, k: int, i: int, j: int, m: int) -> float:
    """Nonzero entry ``(j+m, j)`` of ``A_i^m`` for the qubit Dicke MPS.

    Evaluated as ``sqrt(C(n-i, k-j-m) / C(n-i+1, k-j))``; it is zero when
    ``k - j > n - i + 1``.
    """
    if m not in (0, 1):
        raise DomainError(f"qubit level m must be 0 or 1, got {m}")
    if not 0 <= j <= k:
        raise DomainError(f"bond index j={j} outside [0, {k}]")
    if not 1 <= i <= n:
        raise DomainError(f"site i={i} outside [1, {n}]")
    den = binomial(n - i + 1, k - j)
    if den == 0:
        return 0.0
    num = binomial(n - i, k - j - m)
    return math.sqrt(Fraction(num, den)) if num else 0.0


def qubit_site_matrices(n: int, k: int, i: int) -> np.ndarray:
    """The two ``(k+1) x (k+1)`` matrices ``A_i^0, A_i^1`` of the qubit Dicke MPS."""
    _check_qubit_range(n, k)
    mats = np.zeros((2, k + 1, k + 1))
    for m in (0, 1):
        for j in range(k + 1 - m):
            mats[m, j + m, j] = gamma_qubit(n, k, i, j, m)
    return mats


def qubit_site_matrices_strict(n: int, k: int, i: int) -> np.ndarray:
    """Strictly left-canonical variant: unit diagonal added to ``A_i^0`` near the left end."""
    mats = qubit_site_matrices(n, k, i)
    for j in range(k + i - n - 1):  # j = 0 .. k+i-n-2, empty unless i >= n-k+2
        mats[0, j, j] += 1.0
    return mats


def qubit_chain(n: int, k: int, strict: bool = False) -> MpsChain:
    """MPS for ``|D^n_k>`` with bond dimension ``k+1``; ``strict`` selects the corrected matrices."""
    build = qubit_site_matrices_strict if strict else qubit_site_matrices
    _check_qubit_range(n, k)
    return MpsChain(
        n=n,
        d=2,
        chi=k + 1,
        sites=tuple(build(n, k, i) for i in range(1, n + 1)),
        left=basis_vector(k + 1, k),
        right=basis_vector(k + 1, 0),
    )


# ----------------------------------------------------------------------
# Spin-s Dicke states
# ----------------------------------------------------------------------


def _check_spin_range(n: int, k: int, two_s: int) -> None:
    if two_s < 1:
        raise DomainError(f"two_s must be >= 1, got {two_s}")
    if n < 1 or k < 0:
        raise DomainError(f"need n >= 1 and k >= 0, got n={n}, k={k}")
    if k > two_s * n:
        raise DomainError(f"k={k} exceeds 2sn={two_s * n}")
    if 2 * k > two_s * n:
        raise DomainError(
            f"k={k} > sn for n={n}, two_s={two_s}; build k -> 2sn-k and reflect levels instead"
        )


def gamma_spin(n: int, k: int, two_s: int, i: int, j: int, m: int) -> float:
    """Nonzero entry ``(j+m, j)`` of ``A_i^m`` for the spin-s Dicke MPS.

    ``sqrt(C(2s, m) C(2s(n-i), k-j-m) / C(2s(n-i+1), k-j))``; zero when the
    binomials vanish.
    """
    if not 0 <= m <= two_s:
        raise DomainError(f"level m={m} outside [0, {two_s}]")
    if not 0 <= j <= k:
        raise DomainError(f"bond index j={j} outside [0, {k}]")
    if not 1 <= i <= n:
        raise DomainError(f"site i={i} outside [1, {n}]")
    den = binomial(two_s * (n - i + 1), k - j)
    if den == 0:
        return 0.0
    num = binomial(two_s, m) * binomial(two_s * (n - i), k - j - m)
    return math.sqrt(Fraction(num, den)) if num else 0.0


def spin_site_matrices(n: int, k: int, two_s: int, i: int) -> np.ndarray:
    """The ``2s+1`` matrices of site ``i``; shape ``(2s+1, k+1, k+1)``."""
    _check_spin_range(n, k, two_s)
    mats = np.zeros((two_s + 1, k + 1, k + 1))
    for m in range(two_s + 1):
        for j in range(k + 1 - m):
            mats[m, j + m, j] = gamma_spin(n, k, two_s, i, j, m)
    return mats


def spin_chain(n: int, k: int, two_s: int) -> MpsChain:
    _check_spin_range(n, k, two_s)
    return MpsChain(
        n=n,
        d=two_s + 1,
        chi=k + 1,
        sites=tuple(spin_site_matrices(n, k, two_s, i) for i in range(1, n + 1)),
        left=basis_vector(k + 1, k),
        right=basis_vector(k + 1, 0),
    )


def ti_site_matrices(k: int, two_s: int) -> np.ndarray:
    """Site-independent matrices ``c_m (S^-)^m`` with ``S^-`` the spin-``k/2`` lowering operator.

    ``c_m = sqrt(C(2s, m) / (2s)^m)``. The resulting chain is proportional
    to the spin-s Dicke state but is not left-canonical.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if two_s < 1:
        raise DomainError(f"two_s must be >= 1, got {two_s}")
    lower = np.zeros((k + 1, k + 1))
    for j in range(k):
        lower[j + 1, j] = math.sqrt((j + 1) * (k - j))
    mats = np.zeros((two_s + 1, k + 1, k + 1))
    for m in range(two_s + 1):
        c_m = math.sqrt(Fraction(binomial(two_s, m), two_s**m))
        mats[m] = c_m * np.linalg.matrix_power(lower, m)
    return mats


def ti_chain(n: int, k: int, two_s: int) -> MpsChain:
    """Translationally invariant (unnormalized) chain with boundaries ``<k|``, ``|0>``."""
    mats = ti_site_matrices(k, two_s)
    return MpsChain(
        n=n,
        d=two_s + 1,
        chi=k + 1,
        sites=(mats,) * n,
        left=basis_vector(k + 1, k),
        right=basis_vector(k + 1, 0),
    )


# ----------------------------------------------------------------------
# Qudit Dicke states
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SectorLabeling:
    """Lexicographically ordered sectors ``A^l(k)`` for ``l = 0..n``.

    ``sectors[l][j]`` is the occupation vector carrying label ``j`` on bond ``l``.
    """

    n: int
    kvec: tuple[int, ...]
    sectors: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.sectors)

    @property
    def chi(self) -> int:
        return self.dims[self.n // 2]

    def label(self, l: int, avec: Sequence[int]) -> int:
        return self.sectors[l].index(tuple(avec))


def enumerate_sectors(n: int, kvec: Sequence[int]) -> SectorLabeling:
    """All componentwise-bounded occupation vectors summing to ``l``, for every ``l``."""
    kv = occupation_vector(kvec, n)
    by_l: list[list[tuple[int, ...]]] = [[] for _ in range(n + 1)]
    # itertools.product yields tuples in lexicographic order
    for avec in itertools.product(*(range(k + 1) for k in kv)):
        by_l[sum(avec)].append(avec)
    return SectorLabeling(n=n, kvec=kv, sectors=tuple(tuple(s) for s in by_l))


def gamma_qudit(n: int, kvec: Sequence[int], l: int, avec: Sequence[int], m: int) -> float:
    """Amplitude for adding level ``m`` at site ``l`` to the sector ``avec`` of bond ``l-1``.

    Evaluated as ``sqrt(multinomial(n-l, k-a-m) / multinomial(n-l+1, k-a))``,
    which is zero exactly when ``a_m = k_m``.
    """
    kv = occupation_vector(kvec, n)
    av = tuple(int(a) for a in avec)
    d = len(kv)
    if not 0 <= m < d:
        raise DomainError(f"level m={m} outside [0, {d - 1}]")
    if not 1 <= l <= n:
        raise DomainError(f"site l={l} outside [1, {n}]")
    if len(av) != d or sum(av) != l - 1 or any(not 0 <= a <= k for a, k in zip(av, kv)):
        raise DomainError(f"{av} is not in A^{l - 1}({kv})")
    if av[m] >= kv[m]:
        return 0.0
    rest = [k - a for k, a in zip(kv, av)]
    den = multinomial(n - l + 1, rest)
    rest[m] -= 1
    num = multinomial(n - l, rest)
    assert den > 0, "in-sector denominator cannot vanish"
    return math.sqrt(Fraction(num, den))


def gamma_qudit_ratio(n: int, kvec: Sequence[int], l: int, avec: Sequence[int], m: int) -> float:
    """Same quantity as :func:`gamma_qudit` via the ratio of Schmidt coefficients."""
    kv = occupation_vector(kvec, n)
    av = tuple(avec)
    up = tuple(a + (1 if s == m else 0) for s, a in enumerate(av))
    if up[m] > kv[m]:
        return 0.0
    den = qudit_schmidt_coeff(n, kv, l - 1, av)
    return qudit_schmidt_coeff(n, kv, l, up) * qudit_schmidt_coeff(l, up, l - 1, av) / den


def qudit_site_matrices(
    n: int, kvec: Sequence[int], l: int, labeling: SectorLabeling | None = None
) -> np.ndarray:
    """The ``d`` zero-padded ``chi x chi`` matrices of site ``l``."""
    kv = occupation_vector(kvec, n)
    if labeling is None:
        labeling = enumerate_sectors(n, kv)
    elif labeling.kvec != kv or labeling.n != n:
        raise DomainError(f"labeling was built for {labeling.kvec}, not {kv}")
    if not 1 <= l <= n:
        raise DomainError(f"site l={l} outside [1, {n}]")
    d, chi = len(kv), labeling.chi
    if max(labeling.dims[l - 1], labeling.dims[l]) > chi:
        raise DomainError("sector count exceeds bond dimension; labeling is inconsistent")
    target = {a: j for j, a in enumerate(labeling.sectors[l])}
    mats = np.zeros((d, chi, chi))
    for j, avec in enumerate(labeling.sectors[l - 1]):
        for m in range(d):
            up = avec[:m] + (avec[m] + 1,) + avec[m + 1 :]
            if up in target:
                mats[m, target[up], j] = gamma_qudit(n, kv, l, avec, m)
    return mats


def qudit_chain(n: int, kvec: Sequence[int]) -> MpsChain:
    """MPS for ``|D^n(k)>`` with bond dimension ``D^{floor(n/2)}(k)``."""
    labeling = enumerate_sectors(n, kvec)
    chi = labeling.chi
    return MpsChain(
        n=n,
        d=len(labeling.kvec),
        chi=chi,
        sites=tuple(
            qudit_site_matrices(n, labeling.kvec, l, labeling) for l in range(1, n + 1)
        ),
        left=basis_vector(chi, 0),
        right=basis_vector(chi, 0),
    )


# ----------------------------------------------------------------------
# Contraction and canonicity
# ----------------------------------------------------------------------


def contract(chain: MpsChain) -> DenseState:
    """Dense amplitudes ``<L| A_n^{m_n} ... A_1^{m_1} |R>`` for every basis string."""
    d, chi = chain.d, chain.chi
    # partial[:, x] = A_i^{m_i} ... A_1^{m_1} |R> with x the index of (m_i .. m_1)
    partial = chain.right.reshape(chi, 1)
    for mats in chain.sites:
        if mats.shape != (d, chi, chi):
            raise ValueError(f"site matrices have shape {mats.shape}, expected {(d, chi, chi)}")
        # (d, chi, chi) @ (chi, X) -> (d, chi, X); new index = m * X + x
        stacked = mats @ partial
        partial = stacked.transpose(1, 0, 2).reshape(chi, -1)
    return DenseState(chain.n, d, chain.left @ partial)


def canonicity_residual(chain: MpsChain, site: int) -> float:
    """``max |sum_m A^dag A - 1|`` at ``site`` (1-based)."""
    mats = chain.site(site)
    gram = np.einsum("mji,mjk->ik", mats.conj(), mats)
    return float(np.max(np.abs(gram - np.eye(chain.chi))))


def canonicity_residuals(chain: MpsChain) -> list[float]:
    return [canonicity_residual(chain, i) for i in range(1, chain.n + 1)]
