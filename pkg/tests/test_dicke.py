import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dickemps.dicke import (
    ATOL,
    DenseState,
    DomainError,
    basis_digits,
    binomial,
    dicke_state,
    hypergeom_coeff,
    index_of,
    multinomial,
    qudit_dicke_state,
    qudit_schmidt_coeff,
    spin_dicke_state,
    spin_hypergeom_coeff,
    spin_lowering_oracle,
)

from conftest import ket


@pytest.mark.parametrize("n,k,want", [(4, 2, 6), (4, 5, 0), (0, 0, 1), (5, -1, 0)])
def test_binomial(n, k, want):
    assert binomial(n, k) == want


def test_binomial_is_exact_beyond_int64():
    assert binomial(200, 100) == math.comb(200, 100)


def test_multinomial():
    assert multinomial(4, (2, 1, 1)) == 12
    assert multinomial(4, (2, 1, 2)) == 0
    assert multinomial(3, (1, 1, 1)) == 6


def test_hypergeom_coeff_examples():
    assert hypergeom_coeff(4, 2, 1, 1) == pytest.approx(1 / math.sqrt(2), abs=1e-15)
    assert hypergeom_coeff(4, 2, 2, 1) == pytest.approx(math.sqrt(4 / 6), abs=1e-15)
    for n in range(1, 8):
        for k in range(n + 1):
            assert hypergeom_coeff(n, k, 0, 0) == 1.0
    # j outside the Schmidt range
    assert hypergeom_coeff(4, 2, 1, 2) == 0.0
    with pytest.raises(DomainError):
        hypergeom_coeff(3, 4, 1, 0)
    with pytest.raises(DomainError):
        hypergeom_coeff(3, 1, 4, 0)


def test_spin_hypergeom_coeff_examples():
    assert spin_hypergeom_coeff(4, 2, 2, 1, 1) == pytest.approx(math.sqrt(12 / 28), abs=1e-15)
    for n, k in [(3, 1), (5, 2), (4, 2)]:
        for i in range(n + 1):
            for j in range(-1, k + 2):
                assert spin_hypergeom_coeff(n, k, 1, i, j) == hypergeom_coeff(n, k, i, j)
    for two_s in (1, 2, 3):
        for k in range(2 * two_s + 1):
            assert spin_hypergeom_coeff(2, k, two_s, 2, k) == 1.0
    with pytest.raises(DomainError):
        spin_hypergeom_coeff(2, 5, 2, 1, 0)


def test_qudit_schmidt_coeff_examples():
    assert qudit_schmidt_coeff(4, (2, 1, 1), 2, (1, 1, 0)) == pytest.approx(math.sqrt(1 / 3), abs=1e-15)
    assert qudit_schmidt_coeff(4, (2, 1, 1), 4, (2, 1, 1)) == 1.0
    assert qudit_schmidt_coeff(4, (2, 1, 1), 2, (0, 0, 2)) == 0.0
    with pytest.raises(DomainError):
        qudit_schmidt_coeff(4, (2, 1, 1), 2, (1, 0, 0))


@pytest.mark.parametrize(
    "n,k",
    [(n, k) for n in range(1, 9) for k in range(n + 1)],
)
def test_schmidt_sum_rule_qubit(n, k):
    for i in range(n + 1):
        total = sum(hypergeom_coeff(n, k, i, j) ** 2 for j in range(k + 1))
        assert abs(total - 1) <= ATOL


def test_schmidt_sum_rule_spin_and_qudit():
    for two_s in (1, 2, 3, 4):
        for n in range(1, 6):
            for k in range(two_s * n + 1):
                for i in range(n + 1):
                    total = sum(spin_hypergeom_coeff(n, k, two_s, i, j) ** 2 for j in range(k + 1))
                    assert abs(total - 1) <= ATOL
    for kv in [(1, 1, 1), (2, 1, 1), (2, 3, 3), (1, 0, 2, 2)]:
        n = sum(kv)
        for l in range(n + 1):
            total = sum(
                qudit_schmidt_coeff(n, kv, l, a) ** 2
                for a in itertools.product(*(range(k + 1) for k in kv))
                if sum(a) == l
            )
            assert abs(total - 1) <= ATOL


def test_dicke_4_2_matches_explicit_expansion():
    state = dicke_state(4, 2)
    support = state.support()
    assert set(support) == {ket(s) for s in ["0011", "0101", "0110", "1001", "1010", "1100"]}
    for amp in support.values():
        assert amp == pytest.approx(1 / math.sqrt(6), abs=1e-15)


def test_dicke_edge_cases():
    s = dicke_state(5, 0)
    assert s.support() == {0: 1.0}
    s = dicke_state(3, 1)
    assert set(s.support()) == {ket("001"), ket("010"), ket("100")}
    with pytest.raises(DomainError):
        dicke_state(3, 4)


@pytest.mark.parametrize("n", range(1, 11))
def test_dicke_matches_brute_force_enumeration(n):
    for k in range(n + 1):
        want = np.zeros(2**n)
        strings = [s for s in itertools.product("01", repeat=n) if s.count("1") == k]
        for s in strings:
            want[int("".join(s), 2)] = 1 / math.sqrt(len(strings))
        assert np.max(np.abs(dicke_state(n, k).amplitudes - want)) <= ATOL


def test_spin_dicke_4_2_1_matches_explicit_expansion():
    state = spin_dicke_state(4, 2, 2)
    ones = ["0011", "0101", "0110", "1001", "1010", "1100"]
    twos = ["0002", "0020", "0200", "2000"]
    support = state.support()
    assert set(support) == {ket(s, 3) for s in ones + twos}
    for s in ones:
        assert support[ket(s, 3)] == pytest.approx(1 / math.sqrt(7), abs=1e-15)
    for s in twos:
        assert support[ket(s, 3)] == pytest.approx(1 / (2 * math.sqrt(7)), abs=1e-15)


def test_spin_dicke_two_sites_fully_lowered_pair():
    support = spin_dicke_state(2, 2, 2).support()
    assert support[ket("02", 3)] == pytest.approx(math.sqrt(1 / 6), abs=1e-15)
    assert support[ket("11", 3)] == pytest.approx(math.sqrt(4 / 6), abs=1e-15)
    assert support[ket("20", 3)] == pytest.approx(math.sqrt(1 / 6), abs=1e-15)


def test_spin_specializes_to_qubit():
    for n in range(1, 8):
        for k in range(n + 1):
            assert np.array_equal(spin_dicke_state(n, k, 1).amplitudes, dicke_state(n, k).amplitudes)


@pytest.mark.parametrize("two_s", [1, 2, 3, 4])
def test_spin_closed_form_equals_lowering_oracle(two_s):
    for n in range(1, 6 if two_s <= 3 else 5):
        for k in range(two_s * n + 1):
            got = spin_dicke_state(n, k, two_s).amplitudes
            want = spin_lowering_oracle(n, k, two_s).amplitudes
            assert np.max(np.abs(got - want)) <= ATOL


def test_lowering_oracle_examples():
    assert np.max(np.abs(spin_lowering_oracle(4, 2, 1).amplitudes - dicke_state(4, 2).amplitudes)) <= ATOL
    for two_s in (1, 2, 3):
        state = spin_lowering_oracle(1, two_s, two_s)
        assert state.support() == pytest.approx({two_s: 1.0})
    with pytest.raises(DomainError):
        spin_lowering_oracle(2, 5, 2)
    with pytest.raises(DomainError):
        spin_dicke_state(2, 5, 2)


def test_qudit_dicke_example():
    perms = ["0012", "0102", "1002", "0021", "0201", "2001",
             "0210", "0120", "1020", "1200", "2010", "2100"]
    support = qudit_dicke_state(4, (2, 1, 1)).support()
    assert set(support) == {ket(s, 3) for s in perms}
    for amp in support.values():
        assert amp == pytest.approx(1 / math.sqrt(12), abs=1e-15)


def test_qudit_specializations():
    assert qudit_dicke_state(3, (3, 0, 0)).support() == {0: 1.0}
    for n in range(1, 8):
        for k in range(n + 1):
            assert np.array_equal(qudit_dicke_state(n, (n - k, k)).amplitudes, dicke_state(n, k).amplitudes)
    with pytest.raises(DomainError):
        qudit_dicke_state(4, (2, 1, 2))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_normalization_and_permutation_symmetry(data):
    d = data.draw(st.integers(2, 4))
    n = data.draw(st.integers(1, 10 if d == 2 else 6))
    parts = data.draw(st.lists(st.integers(0, n), min_size=d - 1, max_size=d - 1))
    cuts = sorted(parts)
    kv = tuple(b - a for a, b in zip([0] + cuts, cuts + [n]))
    states = [qudit_dicke_state(n, kv)]
    if d == 2:
        states.append(dicke_state(n, kv[1]))
    two_s = d - 1
    k = data.draw(st.integers(0, two_s * n))
    if d ** n <= 5**6:
        states.append(spin_dicke_state(n, k, two_s))
    for state in states:
        assert abs(state.norm - 1) <= ATOL
        if n >= 2:
            a, b = data.draw(st.lists(st.integers(1, n), min_size=2, max_size=2, unique=True))
            perm = list(range(1, n + 1))
            perm[a - 1], perm[b - 1] = b, a
            assert np.array_equal(state.permute_sites(perm).amplitudes, state.amplitudes)


def test_permute_sites_moves_digits():
    # |0 0 1> on sites (3,2,1) becomes |1 0 0> after swapping sites 1 and 3
    amps = np.zeros(8)
    amps[ket("001")] = 1
    moved = DenseState(3, 2, amps).permute_sites([3, 2, 1])
    assert moved.support() == {ket("100"): 1.0}


def test_basis_digits_and_index_of():
    digits = basis_digits(3, 3)
    for x in range(27):
        assert index_of(digits[x], 3) == x
    assert list(digits[ket("210", 3)]) == [0, 1, 2]


def test_dense_state_validation_and_immutability():
    with pytest.raises(ValueError):
        DenseState(3, 2, np.zeros(7))
    s = dicke_state(3, 1)
    with pytest.raises(ValueError):
        s.amplitudes[0] = 1.0
    assert s.normalized
    assert not DenseState(1, 2, [1.0, 1.0]).normalized


def test_json_round_trip_is_bit_exact(rng):
    amps = rng.normal(size=27) + 1j * rng.normal(size=27)
    state = DenseState(3, 3, amps)
    back = DenseState.from_json(state.to_json())
    assert (back.n, back.d) == (3, 3)
    assert np.array_equal(back.amplitudes, state.amplitudes)


def test_csv_round_trip_is_bit_exact(rng):
    amps = rng.normal(size=16) + 1j * rng.normal(size=16)
    state = DenseState(4, 2, amps)
    text = state.to_csv()
    assert text.splitlines()[0] == "index,real,imag"
    assert np.array_equal(DenseState.from_csv(text, 4, 2).amplitudes, state.amplitudes)
    sparse = dicke_state(4, 2).to_csv(tol=ATOL)
    assert len(sparse.splitlines()) == 7
    assert np.array_equal(DenseState.from_csv(sparse, 4, 2).amplitudes, dicke_state(4, 2).amplitudes)
