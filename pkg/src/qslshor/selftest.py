"""Exhaustive internal consistency checks.

Every check enumerates its full input space, so a pass is a proof of the
table, not a statistical statement.  The CLI selftest command runs all
checks; the test suite reuses them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import qsl
from .circuit import GateKind
from .oracle import apply_gate, multiplier_permutation, norm, zero_state
from .qsl import ALL_STATES, PhasedBit
from .shor import BASES, multiplier_circuit


@dataclass(frozen=True)
class CheckResult:
    name: str
    cases: int
    failures: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures


def _pairs(n: int):
    return product(ALL_STATES, repeat=n)


def check_gate_bijections() -> CheckResult:
    """Each gate is a bijection on its full bit-pair state space."""
    failures = []
    cases = 0
    single = [("gate_x", 1), ("gate_z", 1), ("gate_h", 1), ("gate_s", 1)]
    multi = [("gate_cnot", 2), ("gate_toffoli", 3), ("gate_fredkin", 3)]
    for name, arity in single + multi:
        fn = getattr(qsl, name)
        images = set()
        for args in _pairs(arity):
            out = fn(*args)
            images.add(out if arity > 1 else (out,))
            cases += 1
        if len(images) != 4**arity:
            failures.append(f"{name} is not a bijection")
    for control in (0, 1):
        images = {qsl.gate_cr2(control, s) for s in ALL_STATES}
        cases += 4
        if len(images) != 4:
            failures.append(f"gate_cr2(control={control}) is not a bijection")
    return CheckResult("gate bijections", cases, tuple(failures))


def check_involutions() -> CheckResult:
    """H, X, Z, S, CNOT, Toffoli, Fredkin square to the identity."""
    failures = []
    cases = 0
    for name, arity in [
        ("gate_x", 1),
        ("gate_z", 1),
        ("gate_h", 1),
        ("gate_s", 1),
        ("gate_cnot", 2),
        ("gate_toffoli", 3),
        ("gate_fredkin", 3),
    ]:
        fn = getattr(qsl, name)
        for args in _pairs(arity):
            out = fn(*args) if arity > 1 else (fn(*args),)
            twice = fn(*out) if arity > 1 else (fn(*out),)
            cases += 1
            if twice != args:
                failures.append(f"{name} is not an involution at {args}")
    return CheckResult("gate involutions", cases, tuple(failures))


def check_hadamard_conjugations() -> CheckResult:
    """H X H = Z, H Z H = X, and H on both wires exchanges CNOT's roles."""
    failures = []
    cases = 0
    for s in ALL_STATES:
        cases += 2
        if qsl.gate_h(qsl.gate_x(qsl.gate_h(s))) != qsl.gate_z(s):
            failures.append(f"HXH != Z at {s}")
        if qsl.gate_h(qsl.gate_z(qsl.gate_h(s))) != qsl.gate_x(s):
            failures.append(f"HZH != X at {s}")
    for c, t in _pairs(2):
        cases += 1
        hc, ht = qsl.gate_h(c), qsl.gate_h(t)
        hc, ht = qsl.gate_cnot(hc, ht)
        lhs = (qsl.gate_h(hc), qsl.gate_h(ht))
        t2, c2 = qsl.gate_cnot(t, c)
        if lhs != (c2, t2):
            failures.append(f"H-conjugated CNOT != reversed CNOT at {(c, t)}")
    return CheckResult("Hadamard conjugations", cases, tuple(failures))


def check_toffoli_tables() -> CheckResult:
    """Computational projection and H-conjugation structure of Toffoli."""
    failures = []
    cases = 0
    for a, b, t in _pairs(3):
        cases += 1
        ra, rb, rt = qsl.gate_toffoli(a, b, t)
        if (ra.c, rb.c, rt.c) != (a.c, b.c, t.c ^ (a.c & b.c)):
            failures.append(f"Toffoli computational table wrong at {(a, b, t)}")
    # H on the target symmetrizes the table: every wire's phase bit gets
    # the AND of the other two computational bits.
    for a, b, t in _pairs(3):
        cases += 1
        ra, rb, rt = qsl.gate_toffoli(a, b, qsl.gate_h(t))
        ra, rb, rt = ra, rb, qsl.gate_h(rt)
        expect = (
            PhasedBit(a.c, a.p ^ (b.c & t.c)),
            PhasedBit(b.c, b.p ^ (a.c & t.c)),
            PhasedBit(t.c, t.p ^ (a.c & b.c)),
        )
        if (ra, rb, rt) != expect:
            failures.append(f"H-conjugated Toffoli table wrong at {(a, b, t)}")
    for ctl, x, y in _pairs(3):
        cases += 1
        rc, rx, ry = qsl.gate_fredkin(ctl, x, y)
        want = (x.c, y.c) if ctl.c == 0 else (y.c, x.c)
        if (rx.c, ry.c) != want:
            failures.append(f"Fredkin computational swap wrong at {(ctl, x, y)}")
    return CheckResult("Toffoli/Fredkin tables", cases, tuple(failures))


def check_multipliers() -> CheckResult:
    """All six networks realize x -> a*x mod 15; control off is identity."""
    failures = []
    cases = 0
    for a in BASES:
        spec = multiplier_circuit(a)
        for x in range(16):
            for control in (0, 1):
                bits = [(x >> b) & 1 for b in range(4)]
                if control:
                    for kind, w in spec.gates:
                        if kind == "fredkin":
                            i, j = w
                            bits[i], bits[j] = bits[j], bits[i]
                        else:
                            bits[w[0]] ^= 1
                y = sum(bits[b] << b for b in range(4))
                cases += 1
                if control == 0:
                    if y != x:
                        failures.append(f"x{a} with control 0 moved {x} to {y}")
                elif y % 15 != (a * x) % 15:
                    failures.append(f"x{a} mapped {x} to {y}, want residue {(a*x)%15}")
        seen = set()
        for x in range(16):
            bits = [(x >> b) & 1 for b in range(4)]
            for kind, w in spec.gates:
                if kind == "fredkin":
                    i, j = w
                    bits[i], bits[j] = bits[j], bits[i]
                else:
                    bits[w[0]] ^= 1
            seen.add(sum(bits[b] << b for b in range(4)))
        cases += 1
        if len(seen) != 16:
            failures.append(f"x{a} is not a permutation of the register values")
    return CheckResult("multiplier networks", cases, tuple(failures))


def check_oracle_unitarity() -> CheckResult:
    """Norm preservation and permutation structure of the exact reference."""
    failures = []
    cases = 0
    rng = np.random.default_rng(1234)
    state = zero_state(4)
    gates = [
        (GateKind.H, 1),
        (GateKind.X, 1),
        (GateKind.Z, 1),
        (GateKind.S, 1),
        (GateKind.CNOT, 2),
        (GateKind.TOFFOLI, 3),
        (GateKind.FREDKIN, 3),
    ]
    for _ in range(100):
        kind, arity = gates[rng.integers(len(gates))]
        wires = tuple(rng.choice(4, size=arity, replace=False))
        state = apply_gate(state, kind, wires)
        cases += 1
        if abs(norm(state) - 1.0) > 1e-10:
            failures.append(f"norm drift after {kind.value} on {wires}")
    for a in BASES:
        perm = multiplier_permutation(a)
        cases += 1
        if sorted(perm) != list(range(16)):
            failures.append(f"multiplier permutation for {a} is not a permutation")
        for y in range(1, 15):
            cases += 1
            if perm[y] != (a * y) % 15:
                failures.append(f"multiplier permutation {a}: {y} -> {perm[y]}")
    return CheckResult("oracle unitarity", cases, tuple(failures))


def run_all() -> list[CheckResult]:
    return [
        check_gate_bijections(),
        check_involutions(),
        check_hadamard_conjugations(),
        check_toffoli_tables(),
        check_multipliers(),
        check_oracle_unitarity(),
    ]
