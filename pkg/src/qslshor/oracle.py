"""Exact dense state-vector reference.

Small-register quantum simulator used as the ideal against which the
two-bit simulation is scored.  Two independent routes to the ideal
subroutine distribution are provided: a direct construction (Hadamards,
controlled multiplier permutations, exact inverse Fourier transform) and
a branching simulation of the actual circuit IR with mid-circuit
measurement and classical control.  Both must agree to 1e-10.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, CircuitError, GateKind, validate
from .shor import N_INPUT, N_OUTPUT, Q, ShorParams, output_wire, power_schedule

NORM_TOL = 1e-10

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_S = np.array([[1, 0], [0, 1j]], dtype=complex)
# Inverse of the controlled pi/2 rotation of the Fourier transform, as
# used in the semiclassical measurement schedule.
_R2_DAG = np.array([[1, 0], [0, -1j]], dtype=complex)

_1Q = {GateKind.H: _H, GateKind.X: _X, GateKind.Z: _Z, GateKind.S: _S}


def zero_state(n_wires: int) -> np.ndarray:
    """|0...0> as an ndarray with one length-2 axis per wire."""
    state = np.zeros((2,) * n_wires, dtype=complex)
    state[(0,) * n_wires] = 1.0
    return state


def norm(state: np.ndarray) -> float:
    return float(np.sqrt(np.sum(np.abs(state) ** 2)))


def apply_1q(state: np.ndarray, u: np.ndarray, wire: int) -> np.ndarray:
    st = np.moveaxis(state, wire, 0)
    new = np.tensordot(u, st, axes=([1], [0]))
    return np.moveaxis(new, 0, wire)


def apply_permutation(
    state: np.ndarray, wires: tuple[int, ...], perm: np.ndarray
) -> np.ndarray:
    """Permute basis values of the given wires (most significant first)."""
    k = len(wires)
    st = np.moveaxis(state, wires, range(k))
    shape = st.shape
    st = st.reshape(1 << k, -1)
    inverse = np.empty(len(perm), dtype=np.int64)
    inverse[perm] = np.arange(len(perm))
    st = st[inverse]
    return np.moveaxis(st.reshape(shape), range(k), wires)


def apply_gate(state: np.ndarray, op_kind: GateKind, wires: tuple[int, ...]) -> np.ndarray:
    """Standard unitary action of one gate; norm is preserved."""
    for w in wires:
        if not 0 <= w < state.ndim:
            raise ValueError(f"wire {w} out of range for {state.ndim} wires")
    if op_kind in _1Q:
        return apply_1q(state, _1Q[op_kind], wires[0])
    if op_kind is GateKind.CNOT:
        # values (control, target): 10 <-> 11
        return apply_permutation(state, wires, np.array([0, 1, 3, 2]))
    if op_kind is GateKind.TOFFOLI:
        perm = np.arange(8)
        perm[6], perm[7] = 7, 6
        return apply_permutation(state, wires, perm)
    if op_kind is GateKind.FREDKIN:
        perm = np.arange(8)
        perm[5], perm[6] = 6, 5
        return apply_permutation(state, wires, perm)
    raise ValueError(f"no unitary action defined for {op_kind}")


def multiplier_permutation(a_eff: int, modulus: int = 15) -> np.ndarray:
    """Ideal multiplier unitary as a permutation of register values.

    Acts as y -> a_eff * y (mod 15) on the invertible residues 1..14 and
    as the identity on the two representatives of residue zero.
    """
    perm = np.arange(16, dtype=np.int64)
    for y in range(1, modulus):
        perm[y] = (a_eff * y) % modulus
    return perm


@dataclass
class Distribution:
    """Ideal outcome probabilities over m in [0, 256)."""

    a: int
    probs: np.ndarray

    def __post_init__(self):
        if np.any(self.probs < -NORM_TOL):
            raise ValueError("negative probability")
        if abs(float(np.sum(self.probs)) - 1.0) > NORM_TOL:
            raise ValueError("probabilities do not sum to 1")

    def support(self) -> list[int]:
        return [int(m) for m in np.nonzero(self.probs > NORM_TOL)[0]]

    def to_json(self) -> str:
        probs = {
            str(m): float(f"{self.probs[m]:.12g}")
            for m in np.nonzero(self.probs > 0)[0]
        }
        return json.dumps({"a": self.a, "probs": probs}, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Distribution":
        obj = json.loads(text)
        probs = np.zeros(Q)
        for m, p in obj["probs"].items():
            probs[int(m)] = float(p)
        return cls(a=int(obj["a"]), probs=probs)


def input_register_distribution(state: np.ndarray) -> np.ndarray:
    """Apply the exact inverse QFT to the input wires and marginalize.

    Input qubit k carries weight 2^k in the phase-estimation exponent and
    its outcome lands in bit 2n-1-k of m, which makes the transform a
    plain inverse discrete Fourier transform over the exponent index.
    """
    st = np.moveaxis(state, tuple(range(N_INPUT)), tuple(range(N_INPUT - 1, -1, -1)))
    st = st.reshape(Q, -1)
    amps = np.fft.fft(st, axis=0) / np.sqrt(Q)
    return np.sum(np.abs(amps) ** 2, axis=1)


def ideal_distribution(params: ShorParams) -> Distribution:
    """Exact subroutine outcome distribution as quantum theory predicts."""
    state = zero_state(N_INPUT + N_OUTPUT)
    # output register to value 1
    state = apply_1q(state, _X, output_wire(0))
    for k in range(N_INPUT):
        state = apply_1q(state, _H, k)
    out_wires = tuple(output_wire(b) for b in range(N_OUTPUT - 1, -1, -1))
    for entry in reversed(power_schedule(params.a)):
        if entry.is_identity:
            continue
        perm = multiplier_permutation(entry.multiplicand)
        st = np.moveaxis(state, (entry.k, *out_wires), range(N_OUTPUT + 1))
        shape = st.shape
        st = st.reshape(2, 1 << N_OUTPUT, -1).copy()
        inverse = np.empty(len(perm), dtype=np.int64)
        inverse[perm] = np.arange(len(perm))
        st[1] = st[1][inverse]
        state = np.moveaxis(st.reshape(shape), range(N_OUTPUT + 1), (entry.k, *out_wires))
        if abs(norm(state) - 1.0) > NORM_TOL:
            raise AssertionError("norm drift in ideal simulation")
    return Distribution(params.a, input_register_distribution(state))


def circuit_distribution(circuit: Circuit, slots_msb_first: list[int]) -> np.ndarray:
    """Exact outcome distribution of a circuit IR under quantum mechanics.

    Follows the circuit literally, branching on every mid-circuit
    measurement and honoring classical controls, so it cross-checks the
    semiclassical schedule against the monolithic inverse QFT.
    """
    errors = validate(circuit)
    if errors:
        raise CircuitError(errors)
    n_bits = len(slots_msb_first)
    probs = np.zeros(1 << n_bits)
    # Each branch: (unnormalized state, recorded slot values)
    branches: list[tuple[np.ndarray, list[int]]] = [
        (zero_state(circuit.n_wires), [0] * circuit.n_slots)
    ]
    for op in circuit.ops:
        next_branches: list[tuple[np.ndarray, list[int]]] = []
        for state, slots in branches:
            if op.kind is GateKind.PREPARE:
                if op.value == 1:
                    state = apply_1q(state, _X, op.wires[0])
                next_branches.append((state, slots))
            elif op.kind is GateKind.CR2:
                if slots[op.classical_in]:
                    state = apply_1q(state, _R2_DAG, op.wires[0])
                next_branches.append((state, slots))
            elif op.kind is GateKind.MEASURE:
                st = np.moveaxis(state, op.wires[0], 0)
                for outcome in (0, 1):
                    proj = np.zeros_like(st)
                    proj[outcome] = st[outcome]
                    weight = float(np.sum(np.abs(proj) ** 2))
                    if weight < 1e-24:
                        continue
                    new_slots = list(slots)
                    new_slots[op.classical_out] = outcome
                    next_branches.append(
                        (np.moveaxis(proj, 0, op.wires[0]), new_slots)
                    )
            else:
                next_branches.append((apply_gate(state, op.kind, op.wires), slots))
        branches = next_branches
    for state, slots in branches:
        m = 0
        for slot in slots_msb_first:
            m = (m << 1) | slots[slot]
        probs[m] += float(np.sum(np.abs(state) ** 2))
    return probs
