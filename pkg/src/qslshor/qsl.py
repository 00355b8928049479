"""Quantum Simulation Logic primitives.

A simulated qubit is a pair of classical bits: a computational bit ``c``
and a phase bit ``p``.  Sources write ``c`` and randomize ``p``;
measurements read ``c`` and randomize ``p``; gates are reversible boolean
maps on the bit pairs.  The value-level functions here define the
normative gate tables; the circuit engine applies the same tables in bulk.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rng import RandomSource


@dataclass(frozen=True)
class PhasedBit:
    """One simulated qubit: computational bit ``c`` and phase bit ``p``."""

    c: int
    p: int

    def __post_init__(self):
        if self.c not in (0, 1) or self.p not in (0, 1):
            raise ValueError(f"bits must be 0 or 1, got c={self.c} p={self.p}")


def prepare(value: int, rng: RandomSource) -> PhasedBit:
    """Source: set the computational bit, randomize the phase bit."""
    if value not in (0, 1):
        raise ValueError(f"prepared value must be 0 or 1, got {value}")
    return PhasedBit(value, rng.next_bit())


def measure(q: PhasedBit, rng: RandomSource) -> tuple[int, PhasedBit]:
    """Read the computational bit; the phase bit is re-randomized.

    Returns (outcome, post-measurement state).  The computational bit is
    untouched, so repeated measurement gives the same outcome.
    """
    return q.c, PhasedBit(q.c, rng.next_bit())


def gate_x(q: PhasedBit) -> PhasedBit:
    """Bit flip: c ^= 1."""
    return PhasedBit(q.c ^ 1, q.p)


def gate_z(q: PhasedBit) -> PhasedBit:
    """Phase flip: p ^= 1."""
    return PhasedBit(q.c, q.p ^ 1)


def gate_h(q: PhasedBit) -> PhasedBit:
    """Hadamard: exchanges the computational and phase bits."""
    return PhasedBit(q.p, q.c)


def gate_s(q: PhasedBit) -> PhasedBit:
    """Phase gate: p ^= c, diagonal on the computational bit.

    Note the boolean table squares to the identity, unlike the quantum S
    gate whose square is Z.
    """
    return PhasedBit(q.c, q.p ^ q.c)


def gate_cnot(control: PhasedBit, target: PhasedBit) -> tuple[PhasedBit, PhasedBit]:
    """CNOT: forward action on computational bits, phase kickback backward.

    target.c ^= control.c and control.p ^= target.p.
    """
    return (
        PhasedBit(control.c, control.p ^ target.p),
        PhasedBit(target.c ^ control.c, target.p),
    )


def gate_toffoli(
    a: PhasedBit, b: PhasedBit, t: PhasedBit
) -> tuple[PhasedBit, PhasedBit, PhasedBit]:
    """Toffoli: doubly controlled NOT with symmetric phase kickback.

    t.c ^= a.c & b.c; each control's phase bit receives the AND of the
    other control's computational bit with the target's phase bit.
    """
    return (
        PhasedBit(a.c, a.p ^ (b.c & t.p)),
        PhasedBit(b.c, b.p ^ (a.c & t.p)),
        PhasedBit(t.c ^ (a.c & b.c), t.p),
    )


def gate_fredkin(
    ctl: PhasedBit, x: PhasedBit, y: PhasedBit
) -> tuple[PhasedBit, PhasedBit, PhasedBit]:
    """Controlled swap of x and y, built as CNOT(y,x); Toffoli(ctl,x,y); CNOT(y,x)."""
    y, x = gate_cnot(y, x)
    ctl, x, y = gate_toffoli(ctl, x, y)
    y, x = gate_cnot(y, x)
    return ctl, x, y


def gate_cr2(classical_control: int, q: PhasedBit) -> PhasedBit:
    """Classically controlled R2 rotation.

    If the control bit is 1: XOR the computational bit onto the phase bit,
    then invert the computational bit.  Identity otherwise.
    """
    if classical_control not in (0, 1):
        raise ValueError(f"classical control must be 0 or 1, got {classical_control}")
    if classical_control == 0:
        return q
    return PhasedBit(q.c ^ 1, q.p ^ q.c)


ALL_STATES = tuple(PhasedBit(c, p) for c in (0, 1) for p in (0, 1))
