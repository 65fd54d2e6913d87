"""Dicke states of qubits, spin-s sites and qudits as dense state vectors.

Basis convention: a flat index ``x = sum_s m_s * d**(s-1)`` encodes the ket
``|m_n ... m_2 m_1>``, i.e. site 1 is the least-significant base-``d`` digit.

Spin ``s`` is carried as the integer ``two_s = 2s`` so that ``d = two_s + 1``.

All binomials and multinomials are exact Python integers; they are only
converted to floating point inside the final square root.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
import scipy.sparse as sp

#: Absolute tolerance used for every amplitude comparison in the package.
ATOL = 1e-12


class DomainError(ValueError):
    """Raised when arguments fall outside the domain of a construction."""


# ----------------------------------------------------------------------
# Dense states
# ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DenseState:
    """Amplitude vector over ``n`` sites of local dimension ``d``.

    The amplitude array is stored read-only; build a new state instead of
    mutating one.
    """

    n: int
    d: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != self.d**self.n:
            raise ValueError(
                f"expected {self.d}**{self.n} = {self.d ** self.n} amplitudes, got {amps.size}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @property
    def normalized(self) -> bool:
        return abs(self.norm - 1.0) <= ATOL

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to ``(d,)*n`` with axis 0 = site n, axis n-1 = site 1."""
        return self.amplitudes.reshape((self.d,) * self.n)

    def support(self, tol: float = ATOL) -> dict[int, complex]:
        idx = np.flatnonzero(np.abs(self.amplitudes) > tol)
        return {int(x): complex(self.amplitudes[x]) for x in idx}

    def allclose(self, other: "DenseState", atol: float = ATOL) -> bool:
        return (
            self.n == other.n
            and self.d == other.d
            and max_deviation(self, other) <= atol
        )

    def permute_sites(self, perm: Sequence[int]) -> "DenseState":
        """Relabel sites: site ``s`` (1-based) of the result carries site ``perm[s-1]`` of ``self``."""
        if sorted(perm) != list(range(1, self.n + 1)):
            raise ValueError(f"not a permutation of 1..{self.n}: {perm}")
        # tensor axis for site s is n - s
        axes = [self.n - perm[self.n - 1 - ax] for ax in range(self.n)]
        return DenseState(self.n, self.d, self.tensor().transpose(axes).reshape(-1))

    # -- serialization -------------------------------------------------

    def to_json(self) -> str:
        amps = [[float(a.real), float(a.imag)] for a in self.amplitudes]
        return json.dumps({"n": self.n, "d": self.d, "amplitudes": amps})

    @classmethod
    def from_json(cls, text: str) -> "DenseState":
        obj = json.loads(text)
        amps = np.array([complex(re, im) for re, im in obj["amplitudes"]])
        return cls(int(obj["n"]), int(obj["d"]), amps)

    def to_csv(self, tol: float | None = None) -> str:
        """CSV rows ``index,real,imag``. With ``tol`` set, only rows above it are written."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["index", "real", "imag"])
        for x, a in enumerate(self.amplitudes):
            if tol is not None and abs(a) <= tol:
                continue
            writer.writerow([x, repr(float(a.real)), repr(float(a.imag))])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, n: int, d: int) -> "DenseState":
        amps = np.zeros(d**n, dtype=np.complex128)
        for row in csv.DictReader(io.StringIO(text)):
            amps[int(row["index"])] = complex(float(row["real"]), float(row["imag"]))
        return cls(n, d, amps)


def max_deviation(a: DenseState, b: DenseState) -> float:
    if a.amplitudes.shape != b.amplitudes.shape:
        raise ValueError("states have different dimensions")
    return float(np.max(np.abs(a.amplitudes - b.amplitudes)))


def basis_digits(n: int, d: int) -> np.ndarray:
    """Digit table of shape ``(d**n, n)``; column ``s`` holds the level of site ``s+1``."""
    x = np.arange(d**n)
    return np.stack([(x // d**s) % d for s in range(n)], axis=1)


def index_of(digits: Sequence[int], d: int) -> int:
    """Flat index of the ket with ``digits[s]`` on site ``s+1``."""
    return sum(int(m) * d**s for s, m in enumerate(digits))


# ----------------------------------------------------------------------
# Combinatorics
# ----------------------------------------------------------------------


def binomial(n: int, k: int) -> int:
    """Binomial coefficient, zero outside ``0 <= k <= n``."""
    if n < 0:
        raise DomainError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinomial(n: int, kvec: Sequence[int]) -> int:
    """``n! / prod(k_i!)``; zero if any component is negative or they do not sum to ``n``."""
    if any(k < 0 for k in kvec) or sum(kvec) != n:
        return 0
    out = math.factorial(n)
    for k in kvec:
        out //= math.factorial(k)
    return out


def _sqrt_ratio(num: int, den: int) -> float:
    if num == 0:
        return 0.0
    return math.sqrt(Fraction(num, den))


def occupation_vector(kvec: Sequence[int], n: int | None = None) -> tuple[int, ...]:
    """Validate an occupation vector and return it as a tuple of ints."""
    kv = tuple(int(k) for k in kvec)
    if len(kv) < 2:
        raise DomainError(f"occupation vector needs at least 2 levels, got {kv}")
    if any(k < 0 for k in kv):
        raise DomainError(f"negative occupation in {kv}")
    if n is not None and sum(kv) != n:
        raise DomainError(f"occupations {kv} sum to {sum(kv)}, expected {n}")
    return kv


def hypergeom_coeff(n: int, k: int, i: int, j: int) -> float:
    """Schmidt coefficient of ``|D^n_k>`` for a cut into ``n-i`` and ``i`` qubits.

    ``sqrt(C(i,j) C(n-i,k-j) / C(n,k))``, the square root of the
    hypergeometric probability of drawing ``j`` ones among ``i`` sites.
    """
    if not (0 <= k <= n) or not (0 <= i <= n):
        raise DomainError(f"need 0 <= k <= n and 0 <= i <= n, got n={n}, k={k}, i={i}")
    return _sqrt_ratio(binomial(i, j) * binomial(n - i, k - j), binomial(n, k))


def spin_hypergeom_coeff(n: int, k: int, two_s: int, i: int, j: int) -> float:
    """Spin-s analogue of :func:`hypergeom_coeff` (``2s`` excitations per site)."""
    if two_s < 1:
        raise DomainError(f"two_s must be >= 1, got {two_s}")
    if not (0 <= k <= two_s * n) or not (0 <= i <= n):
        raise DomainError(f"need 0 <= k <= 2sn and 0 <= i <= n, got n={n}, k={k}, i={i}")
    return _sqrt_ratio(
        binomial(two_s * i, j) * binomial(two_s * (n - i), k - j),
        binomial(two_s * n, k),
    )


def qudit_schmidt_coeff(n: int, kvec: Sequence[int], l: int, avec: Sequence[int]) -> float:
    """Schmidt coefficient of ``|D^n(k)>`` for the sector ``a`` of the rightmost ``l`` sites."""
    kv = occupation_vector(kvec, n)
    av = tuple(int(a) for a in avec)
    if len(av) != len(kv):
        raise DomainError(f"length mismatch between {kv} and {av}")
    if not 0 <= l <= n:
        raise DomainError(f"cut l={l} outside [0, {n}]")
    if any(a < 0 for a in av) or sum(av) != l:
        raise DomainError(f"{av} is not an occupation vector summing to l={l}")
    if any(a > k for a, k in zip(av, kv)):
        return 0.0
    rest = tuple(k - a for k, a in zip(kv, av))
    return _sqrt_ratio(multinomial(l, av) * multinomial(n - l, rest), multinomial(n, kv))


# ----------------------------------------------------------------------
# State constructors
# ----------------------------------------------------------------------


def dicke_state(n: int, k: int) -> DenseState:
    """Qubit Dicke state ``|D^n_k>``: uniform over all strings with ``k`` ones."""
    if n < 1 or not 0 <= k <= n:
        raise DomainError(f"need n >= 1 and 0 <= k <= n, got n={n}, k={k}")
    weight = basis_digits(n, 2).sum(axis=1)
    amps = np.where(weight == k, _sqrt_ratio(1, binomial(n, k)), 0.0)
    return DenseState(n, 2, amps)


def spin_dicke_state(n: int, k: int, two_s: int) -> DenseState:
    """Spin-s Dicke state from its closed-form multivariate hypergeometric amplitudes."""
    if n < 1 or two_s < 1 or not 0 <= k <= two_s * n:
        raise DomainError(f"need n >= 1, two_s >= 1, 0 <= k <= 2sn; got n={n}, k={k}, two_s={two_s}")
    d = two_s + 1
    digits = basis_digits(n, d)
    den = binomial(two_s * n, k)
    row_binom = [binomial(two_s, m) for m in range(d)]
    amps = np.zeros(d**n)
    for x in np.flatnonzero(digits.sum(axis=1) == k):
        num = math.prod(row_binom[m] for m in digits[x])
        amps[x] = _sqrt_ratio(num, den)
    return DenseState(n, d, amps)


def spin_lowering_matrix(two_s: int) -> np.ndarray:
    """Single-site lowering operator; level ``j`` counts excitations below the top weight."""
    d = two_s + 1
    mat = np.zeros((d, d))
    for j in range(two_s):
        mat[j + 1, j] = math.sqrt((j + 1) * (two_s - j))
    return mat


def total_lowering_operator(n: int, two_s: int) -> sp.csr_matrix:
    """Sparse total lowering operator ``sum_s S^-_s`` on ``n`` spin-s sites."""
    d = two_s + 1
    local = sp.csr_matrix(spin_lowering_matrix(two_s))
    total = sp.csr_matrix((d**n, d**n))
    for s in range(1, n + 1):
        term = sp.kron(sp.identity(d ** (n - s)), sp.kron(local, sp.identity(d ** (s - 1))))
        total = total + term
    return total.tocsr()


def spin_lowering_oracle(n: int, k: int, two_s: int) -> DenseState:
    """Spin-s Dicke state by applying the total lowering operator ``k`` times to ``|0...0>``.

    Independent of the closed form in :func:`spin_dicke_state`.
    """
    if n < 1 or two_s < 1 or k < 0:
        raise DomainError(f"need n >= 1, two_s >= 1, k >= 0; got n={n}, k={k}, two_s={two_s}")
    d = two_s + 1
    lower = total_lowering_operator(n, two_s)
    vec = np.zeros(d**n)
    vec[0] = 1.0
    for _ in range(k):
        vec = lower @ vec
    norm = np.linalg.norm(vec)
    if norm == 0.0:
        raise DomainError(f"(S^-)^{k} annihilates |0>^n for n={n}, two_s={two_s}")
    return DenseState(n, d, vec / norm)


def qudit_dicke_state(n: int, kvec: Sequence[int]) -> DenseState:
    """Qudit Dicke state ``|D^n(k)>``: uniform over strings with level histogram ``kvec``."""
    kv = occupation_vector(kvec, n)
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    d = len(kv)
    digits = basis_digits(n, d)
    hist = np.stack([(digits == m).sum(axis=1) for m in range(d)], axis=1)
    match = np.all(hist == np.array(kv), axis=1)
    amps = np.where(match, _sqrt_ratio(1, multinomial(n, kv)), 0.0)
    return DenseState(n, d, amps)
