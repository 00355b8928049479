"""Circuit intermediate representation and validation.

A circuit is an ordered list of operations over integer wire ids plus a
set of classical outcome slots.  Measurements write slots; classically
controlled rotations read slots written earlier.  ``validate`` returns a
list of located violations instead of raising, so callers can report all
problems at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class GateKind(Enum):
    PREPARE = "prepare"
    X = "x"
    Z = "z"
    H = "h"
    S = "s"
    CNOT = "cnot"
    TOFFOLI = "toffoli"
    FREDKIN = "fredkin"
    CR2 = "cr2"
    MEASURE = "measure"


ARITY = {
    GateKind.PREPARE: 1,
    GateKind.X: 1,
    GateKind.Z: 1,
    GateKind.H: 1,
    GateKind.S: 1,
    GateKind.CNOT: 2,
    GateKind.TOFFOLI: 3,
    GateKind.FREDKIN: 3,
    GateKind.CR2: 1,
    GateKind.MEASURE: 1,
}


@dataclass(frozen=True)
class Operation:
    kind: GateKind
    wires: tuple[int, ...]
    value: int | None = None  # PREPARE only
    classical_in: int | None = None  # CR2 only
    classical_out: int | None = None  # MEASURE only


@dataclass
class Circuit:
    n_wires: int
    n_slots: int
    ops: list[Operation] = field(default_factory=list)

    # -- builder helpers ------------------------------------------------

    def add(self, op: Operation) -> None:
        self.ops.append(op)

    def prepare(self, wire: int, value: int) -> None:
        self.add(Operation(GateKind.PREPARE, (wire,), value=value))

    def x(self, wire: int) -> None:
        self.add(Operation(GateKind.X, (wire,)))

    def z(self, wire: int) -> None:
        self.add(Operation(GateKind.Z, (wire,)))

    def h(self, wire: int) -> None:
        self.add(Operation(GateKind.H, (wire,)))

    def s(self, wire: int) -> None:
        self.add(Operation(GateKind.S, (wire,)))

    def cnot(self, control: int, target: int) -> None:
        self.add(Operation(GateKind.CNOT, (control, target)))

    def toffoli(self, a: int, b: int, target: int) -> None:
        self.add(Operation(GateKind.TOFFOLI, (a, b, target)))

    def fredkin(self, control: int, x: int, y: int) -> None:
        self.add(Operation(GateKind.FREDKIN, (control, x, y)))

    def cr2(self, wire: int, classical_in: int) -> None:
        self.add(Operation(GateKind.CR2, (wire,), classical_in=classical_in))

    def measure(self, wire: int, classical_out: int) -> None:
        self.add(Operation(GateKind.MEASURE, (wire,), classical_out=classical_out))

    # -- draws needed per shot -----------------------------------------

    def n_random_draws(self) -> int:
        """Random bits consumed by one shot (one per prepare and measure)."""
        return sum(1 for op in self.ops if op.kind in (GateKind.PREPARE, GateKind.MEASURE))


def validate(circuit: Circuit) -> list[str]:
    """Check structural invariants; returns a list of violations (empty = ok)."""
    errors: list[str] = []
    written: set[int] = set()
    for i, op in enumerate(circuit.ops):
        where = f"op {i} ({op.kind.value})"
        if len(op.wires) != ARITY[op.kind]:
            errors.append(f"{where}: expected {ARITY[op.kind]} wires, got {len(op.wires)}")
        if len(set(op.wires)) != len(op.wires):
            errors.append(f"{where}: duplicate wire in {op.wires}")
        for w in op.wires:
            if not 0 <= w < circuit.n_wires:
                errors.append(f"{where}: wire {w} out of range [0, {circuit.n_wires})")
        if op.kind is GateKind.PREPARE:
            if op.value not in (0, 1):
                errors.append(f"{where}: prepared value must be 0 or 1, got {op.value}")
        elif op.value is not None:
            errors.append(f"{where}: value only allowed on prepare")
        if op.kind is GateKind.CR2:
            if op.classical_in is None:
                errors.append(f"{where}: cr2 requires a classical control slot")
            elif not 0 <= op.classical_in < circuit.n_slots:
                errors.append(f"{where}: classical slot {op.classical_in} out of range")
            elif op.classical_in not in written:
                errors.append(
                    f"{where}: classical dependency order — slot {op.classical_in}"
                    " not yet measured"
                )
        elif op.classical_in is not None:
            errors.append(f"{where}: classical_in only allowed on cr2")
        if op.kind is GateKind.MEASURE:
            if op.classical_out is None:
                errors.append(f"{where}: measure requires an outcome slot")
            elif not 0 <= op.classical_out < circuit.n_slots:
                errors.append(f"{where}: outcome slot {op.classical_out} out of range")
            elif op.classical_out in written:
                errors.append(f"{where}: outcome slot {op.classical_out} written twice")
            else:
                written.add(op.classical_out)
        elif op.classical_out is not None:
            errors.append(f"{where}: classical_out only allowed on measure")
    for slot in range(circuit.n_slots):
        if slot not in written:
            errors.append(f"outcome slot {slot} never written")
    return errors


class CircuitError(ValueError):
    """Raised when an invalid circuit is handed to the executor."""

    def __init__(self, errors: list[str]):
        super().__init__("invalid circuit:\n" + "\n".join(errors))
        self.errors = errors
