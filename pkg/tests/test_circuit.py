import json
import math

import numpy as np
import pytest

from dickemps import circuit as circ
from dickemps.dicke import ATOL, DomainError, dicke_state
from dickemps.mps import gamma_qubit

from conftest import ket

SMALL = [(n, k) for n in range(2, 7) for k in range(1, n // 2 + 1)]


def block_output(n, k, i, l, ancilla, qubits):
    start = circ.HybridState.basis(n, k, ancilla, qubits)
    return circ.apply_gates(start, circ.build_block(n, k, i, l)).amplitudes


def basis_amp(n, k, ancilla, qubits):
    return circ.HybridState.basis(n, k, ancilla, qubits).amplitudes


def test_rotation_angle_example():
    assert circ.rotation_angle(4, 2, 1, 0) == pytest.approx(math.pi / 2, abs=1e-15)
    with pytest.raises(DomainError):
        circ.rotation_angle(4, 2, 1, 2)


def test_rotation_angle_rejects_out_of_support_block():
    # k - l > n - i + 1 makes both gammas vanish
    with pytest.raises(DomainError):
        circ.rotation_angle(6, 3, 6, 0)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 13) for k in range(1, n // 2 + 1)])
def test_angles_match_mps_gammas(n, k):
    for g in circ.build_circuit(n, k).gates:
        if g.kind == circ.ROT:
            i, l = g.block
            assert 0.0 <= g.angle <= math.pi
            assert abs(math.cos(g.angle / 2) - gamma_qubit(n, k, i, l, 0)) <= 1e-14
            assert abs(math.sin(g.angle / 2) - gamma_qubit(n, k, i, l, 1)) <= 1e-14


def test_build_block_layout():
    gates = circ.build_block(4, 2, 2, 1)
    assert [g.kind for g in gates] == ["inc", "rot", "dec"]
    assert gates[0].qubit_control == 0 and gates[2].qubit_control == 0
    assert gates[1].ancilla_control == 2
    assert all(g.site == 2 and g.block == (2, 1) for g in gates)
    swapped = circ.build_block(4, 2, 2, 1, use_swap=True)
    assert [g.kind for g in swapped] == ["swap", "rot", "swap"]
    assert swapped[0].levels == (1, 2)


@pytest.mark.parametrize("n,k", SMALL)
def test_block_truth_table(n, k):
    for i in range(1, n + 1):
        bit = 1 << (i - 1)
        for l in circ.block_range(n, k, i):
            g0, g1 = gamma_qubit(n, k, i, l, 0), gamma_qubit(n, k, i, l, 1)
            for ancilla in range(k + 1):
                for qubits in range(2**n):
                    got = block_output(n, k, i, l, ancilla, qubits)
                    if not qubits & bit and ancilla == l:
                        want = g0 * basis_amp(n, k, l, qubits) + g1 * basis_amp(n, k, l + 1, qubits | bit)
                    elif qubits & bit and ancilla == l + 1:
                        # second column of the rotation, fixed by unitarity
                        want = -g1 * basis_amp(n, k, l, qubits & ~bit) + g0 * basis_amp(n, k, l + 1, qubits)
                    else:
                        want = basis_amp(n, k, ancilla, qubits)
                    assert np.max(np.abs(got - want)) <= 1e-14


@pytest.mark.parametrize("n,k", SMALL)
def test_blocks_do_not_interfere(n, k):
    for i in range(1, n + 1):
        for j in range(k):
            try:
                first = circ.build_block(n, k, i, j)
            except DomainError:
                continue
            for qubits in range(2**n):
                if qubits & (1 << (i - 1)):
                    continue
                out = circ.apply_gates(circ.HybridState.basis(n, k, j, qubits), first)
                for l in range(j + 1, k):
                    try:
                        later = circ.build_block(n, k, i, l)
                    except DomainError:
                        continue
                    again = circ.apply_gates(out, later)
                    assert np.max(np.abs(again.amplitudes - out.amplitudes)) <= 1e-14


def test_build_ui_ranges():
    assert [g.block for g in circ.build_ui(4, 2, 1)] == [(1, 0)] * 3
    assert [g.block for g in circ.build_ui(4, 2, 4)] == [(4, 1)] * 3
    blocks = {g.block for i in range(1, 5) for g in circ.build_ui(4, 2, i)}
    assert len(blocks) == 6
    with pytest.raises(DomainError):
        circ.build_ui(4, 2, 5)


def test_gate_counts_and_depth():
    assert len(circ.build_circuit(4, 2)) == 18
    assert circ.depth(circ.build_circuit(4, 2)) == 18
    assert circ.depth(circ.build_circuit(5, 2)) == 24
    assert circ.depth(circ.build_circuit(5, 0)) == 0
    for n in range(2, 13):
        assert len(circ.build_circuit(n, 1)) == 3 * n
    for n in range(1, 13):
        for k in range(n // 2 + 1):
            assert len(circ.build_circuit(n, k)) == 3 * k * (n + 1 - k)
    with pytest.raises(DomainError):
        circ.build_circuit(4, 3)


def test_gate_order():
    c = circ.build_circuit(7, 3)
    triples = [c.gates[x : x + 3] for x in range(0, len(c), 3)]
    tags = []
    for t in triples:
        assert [g.kind for g in t] == ["inc", "rot", "dec"]
        assert t[0].block == t[1].block == t[2].block
        tags.append(t[0].block)
    assert tags == sorted(tags)


def test_increment_wraps_and_zero_rotation_is_identity():
    n, k = 3, 2
    state = circ.HybridState.basis(n, k, ancilla=k, qubits=0)
    out = circ.apply_gate(state, circ.Gate(circ.INC, site=2, qubit_control=0))
    assert np.array_equal(out.amplitudes, basis_amp(n, k, 0, 0))
    back = circ.apply_gate(out, circ.Gate(circ.DEC, site=2, qubit_control=0))
    assert np.array_equal(back.amplitudes, state.amplitudes)
    # qubit 2 set: increment does not fire
    state = circ.HybridState.basis(n, k, ancilla=1, qubits=ket("010"))
    out = circ.apply_gate(state, circ.Gate(circ.INC, site=2, qubit_control=0))
    assert np.array_equal(out.amplitudes, state.amplitudes)
    rng = np.random.default_rng(7)
    amps = rng.normal(size=(k + 1) * 2**n) + 1j * rng.normal(size=(k + 1) * 2**n)
    state = circ.HybridState(n, k, amps)
    out = circ.apply_gate(state, circ.Gate(circ.ROT, site=1, ancilla_control=1, angle=0.0))
    assert np.array_equal(out.amplitudes, state.amplitudes)


def test_each_gate_preserves_norm():
    c = circ.build_circuit(8, 4)
    state = circ.HybridState.basis(8, 4)
    for g in c.gates:
        state = circ.apply_gate(state, g)
        assert abs(state.norm - 1) <= 1e-14


def test_apply_gate_rejects_bad_site():
    with pytest.raises(ValueError):
        circ.apply_gate(circ.HybridState.basis(3, 1), circ.Gate(circ.INC, site=4, qubit_control=0))
    with pytest.raises(ValueError):
        circ.HybridState(3, 1, np.zeros(10))


def test_simulate_two_qubit_w_state():
    final = circ.simulate(circ.build_circuit(2, 1))
    want = np.zeros(8)
    want[1 * 4 + ket("01")] = want[1 * 4 + ket("10")] = 1 / math.sqrt(2)
    assert np.max(np.abs(final.amplitudes - want)) <= ATOL


@pytest.mark.parametrize("n,k", [(4, 2), (6, 3)])
def test_simulate_prepares_dicke(n, k):
    final = circ.simulate(circ.build_circuit(n, k))
    assert circ.preparation_fidelity(final) >= 1 - 1e-12
    projected = final.project_ancilla(k)
    assert abs(projected.norm - 1) <= ATOL
    assert np.max(np.abs(projected.amplitudes - dicke_state(n, k).amplitudes)) <= ATOL


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 13) for k in range(0, n // 2 + 1)])
def test_swap_variant_matches(n, k):
    a = circ.simulate(circ.build_circuit(n, k))
    b = circ.simulate(circ.build_circuit(n, k, use_swap=True))
    assert np.max(np.abs(a.amplitudes - b.amplitudes)) <= ATOL
    assert abs(a.norm - 1) <= ATOL


def test_simulate_rejects_mismatched_initial_state():
    with pytest.raises(ValueError):
        circ.simulate(circ.build_circuit(4, 2), circ.HybridState.basis(4, 1))


def test_circuit_json_schema_and_round_trip():
    c = circ.build_circuit(5, 2)
    obj = json.loads(c.to_json())
    assert (obj["n"], obj["k"], obj["chi"]) == (5, 2, 3)
    inc, rot, dec = obj["gates"][:3]
    assert inc == {"kind": "inc", "site": 1, "ancilla_control": None, "qubit_control": 0, "angle": None, "block": [1, 0]}
    assert rot["kind"] == "rot" and rot["ancilla_control"] == 1 and rot["qubit_control"] is None
    assert dec["kind"] == "dec"
    back = circ.CircuitDescription.from_json(c.to_json())
    assert back == c
    swapped = circ.build_circuit(5, 2, use_swap=True)
    assert circ.CircuitDescription.from_json(swapped.to_json()) == swapped
