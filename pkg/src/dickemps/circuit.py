"""Sequential preparation circuit for qubit Dicke states with a ``(k+1)``-level ancilla.

Each site unitary ``U_i`` is a product of three-gate blocks ``I^(i)_l``:

1. ancilla ``+1 mod (k+1)`` if qubit ``i`` is 0,
2. rotation ``R(theta)`` on qubit ``i`` if the ancilla equals ``l+1``,
3. ancilla ``-1 mod (k+1)`` if qubit ``i`` is 0.

On ``|l>|0>_i`` the block produces ``g0 |l>|0>_i + g1 |l+1>|1>_i`` where
``(g0, g1) = (cos(theta/2), sin(theta/2))`` are the MPS entries
:func:`dickemps.mps.gamma_qubit`. Simulation runs on a dense vector of
length ``(k+1) * 2**n`` with index ``ancilla * 2**n + qubits``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .dicke import DenseState, DomainError, dicke_state
from .mps import gamma_qubit

INC = "inc"
DEC = "dec"
ROT = "rot"
SWAP = "swap"  # two-level ancilla NOT X^(l,l+1), alternative to inc/dec


@dataclass(frozen=True)
class Gate:
    kind: str
    site: int
    ancilla_control: int | None = None
    qubit_control: int | None = None
    angle: float | None = None
    block: tuple[int, int] | None = None
    levels: tuple[int, int] | None = None

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "site": self.site,
            "ancilla_control": self.ancilla_control,
            "qubit_control": self.qubit_control,
            "angle": self.angle,
            "block": list(self.block) if self.block is not None else None,
        }
        if self.levels is not None:
            out["levels"] = list(self.levels)
        return out

    @classmethod
    def from_dict(cls, obj: dict) -> "Gate":
        block = obj.get("block")
        levels = obj.get("levels")
        return cls(
            kind=obj["kind"],
            site=int(obj["site"]),
            ancilla_control=obj.get("ancilla_control"),
            qubit_control=obj.get("qubit_control"),
            angle=obj.get("angle"),
            block=tuple(block) if block is not None else None,
            levels=tuple(levels) if levels is not None else None,
        )


@dataclass(frozen=True)
class CircuitDescription:
    n: int
    k: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    @property
    def chi(self) -> int:
        return self.k + 1

    def __len__(self) -> int:
        return len(self.gates)

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "k": self.k,
                "chi": self.chi,
                "gates": [g.to_dict() for g in self.gates],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "CircuitDescription":
        obj = json.loads(text)
        gates = tuple(Gate.from_dict(g) for g in obj["gates"])
        return cls(n=int(obj["n"]), k=int(obj["k"]), gates=gates)


@dataclass(frozen=True, eq=False)
class HybridState:
    """Ancilla (``k+1`` levels) tensored with ``n`` qubits."""

    n: int
    k: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != (self.k + 1) * 2**self.n:
            raise ValueError(
                f"expected {(self.k + 1) * 2 ** self.n} amplitudes, got {amps.size}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis(cls, n: int, k: int, ancilla: int = 0, qubits: int = 0) -> "HybridState":
        amps = np.zeros((k + 1) * 2**n, dtype=np.complex128)
        amps[ancilla * 2**n + qubits] = 1.0
        return cls(n, k, amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def ancilla_block(self, value: int) -> np.ndarray:
        return self.amplitudes.reshape(self.k + 1, 2**self.n)[value]

    def project_ancilla(self, value: int) -> DenseState:
        """Unnormalized system state left after projecting the ancilla on ``|value>``."""
        return DenseState(self.n, 2, self.ancilla_block(value))


# ----------------------------------------------------------------------
# Synthesis
# ----------------------------------------------------------------------


def _check_circuit_range(n: int, k: int) -> None:
    if n < 1 or k < 0:
        raise DomainError(f"need n >= 1 and k >= 0, got n={n}, k={k}")
    if 2 * k > n:
        raise DomainError(f"k={k} > n/2 for n={n}; prepare k -> n-k and flip every qubit")


def block_range(n: int, k: int, i: int) -> range:
    """Values of ``l`` kept in the product for ``U_i``."""
    return range(max(0, i - n + k - 1), min(i - 1, k - 1) + 1)


def rotation_angle(n: int, k: int, i: int, l: int) -> float:
    """``theta`` with ``cos(theta/2) = gamma_{l,0}`` and ``sin(theta/2) = gamma_{l,1}``."""
    if not 0 <= l <= k - 1:
        raise DomainError(f"block index l={l} outside [0, {k - 1}]")
    g0 = gamma_qubit(n, k, i, l, 0)
    g1 = gamma_qubit(n, k, i, l, 1)
    if g0 == 0.0 and g1 == 0.0:
        raise DomainError(f"block (i={i}, l={l}) lies outside the support of the MPS")
    return 2.0 * math.atan2(g1, g0)


def build_block(n: int, k: int, i: int, l: int, use_swap: bool = False) -> list[Gate]:
    """Gates of ``I^(i)_l``. ``use_swap`` replaces the ancilla shifts by ``X^(l,l+1)``."""
    theta = rotation_angle(n, k, i, l)
    tag = (i, l)
    rot = Gate(ROT, site=i, ancilla_control=(l + 1) % (k + 1), angle=theta, block=tag)
    if use_swap:
        swap = Gate(SWAP, site=i, qubit_control=0, block=tag, levels=(l, l + 1))
        return [swap, rot, swap]
    return [
        Gate(INC, site=i, qubit_control=0, block=tag),
        rot,
        Gate(DEC, site=i, qubit_control=0, block=tag),
    ]


def build_ui(n: int, k: int, i: int, use_swap: bool = False) -> list[Gate]:
    """Gates of ``U_i`` in application order (``l`` ascending)."""
    if not 1 <= i <= n:
        raise DomainError(f"site i={i} outside [1, {n}]")
    gates = []
    for l in block_range(n, k, i):
        gates.extend(build_block(n, k, i, l, use_swap))
    return gates


def build_circuit(n: int, k: int, use_swap: bool = False) -> CircuitDescription:
    """Circuit taking ``|0>|0...0>`` to ``|k>|D^n_k>``; it has ``3k(n+1-k)`` gates."""
    _check_circuit_range(n, k)
    gates = []
    for i in range(1, n + 1):
        gates.extend(build_ui(n, k, i, use_swap))
    return CircuitDescription(n=n, k=k, gates=tuple(gates))


def depth(circuit: CircuitDescription) -> int:
    """Depth with every gate serialized, i.e. the gate count."""
    return len(circuit.gates)


# ----------------------------------------------------------------------
# Simulation
# ----------------------------------------------------------------------


def _apply_inplace(view: np.ndarray, gate: Gate, k: int) -> None:
    # view axes: (ancilla, qubits above site i, qubit i, qubits below site i)
    if gate.kind in (INC, DEC, SWAP):
        ctrl = 0 if gate.qubit_control is None else gate.qubit_control
        sub = view[:, :, ctrl, :]
        if gate.kind == INC:
            sub[...] = np.roll(sub, 1, axis=0)
        elif gate.kind == DEC:
            sub[...] = np.roll(sub, -1, axis=0)
        else:
            a, b = gate.levels
            sub[[a, b]] = sub[[b, a]]
    elif gate.kind == ROT:
        c, s = math.cos(gate.angle / 2), math.sin(gate.angle / 2)
        sub = view[gate.ancilla_control]
        zero, one = sub[:, 0, :].copy(), sub[:, 1, :].copy()
        sub[:, 0, :] = c * zero - s * one
        sub[:, 1, :] = s * zero + c * one
    else:
        raise ValueError(f"unknown gate kind {gate.kind!r}")


def _site_view(amps: np.ndarray, n: int, k: int, site: int) -> np.ndarray:
    if not 1 <= site <= n:
        raise ValueError(f"gate acts on site {site}, state has {n} qubits")
    return amps.reshape(k + 1, 2 ** (n - site), 2, 2 ** (site - 1))


def apply_gate(state: HybridState, gate: Gate) -> HybridState:
    """New state with ``gate`` applied."""
    amps = state.amplitudes.copy()
    _apply_inplace(_site_view(amps, state.n, state.k, gate.site), gate, state.k)
    return HybridState(state.n, state.k, amps)


def apply_gates(state: HybridState, gates) -> HybridState:
    amps = state.amplitudes.copy()
    for gate in gates:
        _apply_inplace(_site_view(amps, state.n, state.k, gate.site), gate, state.k)
    return HybridState(state.n, state.k, amps)


def simulate(circuit: CircuitDescription, initial: HybridState | None = None) -> HybridState:
    """Run ``circuit`` on ``|0>|0...0>`` (or on ``initial``)."""
    if initial is None:
        initial = HybridState.basis(circuit.n, circuit.k)
    elif (initial.n, initial.k) != (circuit.n, circuit.k):
        raise ValueError("initial state does not match circuit dimensions")
    return apply_gates(initial, circuit.gates)


def preparation_fidelity(state: HybridState, target: DenseState | None = None) -> float:
    """``|<k| <target| state>|^2``; the target defaults to ``|D^n_k>``."""
    if target is None:
        target = dicke_state(state.n, state.k)
    overlap = np.vdot(target.amplitudes, state.ancilla_block(state.k))
    return float(abs(overlap) ** 2)
