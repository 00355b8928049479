"""Circuit execution and Monte Carlo sampling.

Two executors share one random-bit addressing scheme (stream = shot index,
counter = order of the prepare/measure in the circuit), so the scalar
single-shot path and the numpy bulk path produce bit-identical outcomes.
Sampling is embarrassingly parallel over shots; histograms from disjoint
shot ranges merge associatively.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .circuit import Circuit, CircuitError, GateKind, validate
from .rng import RandomSource, bit_block

BIT_ORDER = "msb-first-by-power"

# Shots are executed in fixed-size blocks so the thread count never
# changes which (stream, counter) pair feeds which random decision.
BLOCK_SHOTS = 1 << 16


@dataclass
class Histogram:
    """Outcome counts over the measured integer m, plus run metadata."""

    counts: dict[int, int]
    modulus: int
    a: int
    shots: int
    seed: int | None
    n_input_bits: int
    bit_order: str = BIT_ORDER

    def frequencies(self) -> dict[int, float]:
        return {m: c / self.shots for m, c in sorted(self.counts.items())}

    def to_json(self) -> str:
        obj = {
            "N": self.modulus,
            "a": self.a,
            "shots": self.shots,
            "n_input_bits": self.n_input_bits,
            "seed": self.seed,
            "bit_order": self.bit_order,
            "counts": {str(m): c for m, c in sorted(self.counts.items())},
        }
        return json.dumps(obj, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Histogram":
        obj = json.loads(text)
        counts = {int(m): int(c) for m, c in obj["counts"].items()}
        return cls(
            counts=counts,
            modulus=int(obj["N"]),
            a=int(obj["a"]),
            shots=int(obj["shots"]),
            seed=None if obj["seed"] is None else int(obj["seed"]),
            n_input_bits=int(obj["n_input_bits"]),
            bit_order=obj["bit_order"],
        )

    def to_csv(self) -> str:
        """Delimited form: m, the binary fraction m/2^(2n), count, frequency."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["m", "phase", "count", "frequency"])
        q = 1 << self.n_input_bits
        for m, c in sorted(self.counts.items()):
            writer.writerow([m, repr(m / q), c, repr(c / self.shots)])
        return buf.getvalue()


def merge(h1: Histogram, h2: Histogram) -> Histogram:
    """Pointwise addition of counts; metadata must agree."""
    for attr in ("modulus", "a", "n_input_bits", "bit_order"):
        if getattr(h1, attr) != getattr(h2, attr):
            raise ValueError(
                f"histogram metadata mismatch on {attr}:"
                f" {getattr(h1, attr)!r} != {getattr(h2, attr)!r}"
            )
    counts = dict(h1.counts)
    for m, c in h2.counts.items():
        counts[m] = counts.get(m, 0) + c
    seed = h1.seed if h1.seed == h2.seed else None
    return replace(h1, counts=counts, shots=h1.shots + h2.shots, seed=seed)


def run_shot(circuit: Circuit, seed: int, shot_index: int) -> tuple[int, ...]:
    """Execute one shot; returns the recorded outcome bits, slot order."""
    errors = validate(circuit)
    if errors:
        raise CircuitError(errors)
    rng = RandomSource(seed, stream=shot_index)
    c = [0] * circuit.n_wires
    p = [0] * circuit.n_wires
    out = [0] * circuit.n_slots
    for op in circuit.ops:
        k = op.kind
        w = op.wires
        if k is GateKind.PREPARE:
            c[w[0]] = op.value
            p[w[0]] = rng.next_bit()
        elif k is GateKind.X:
            c[w[0]] ^= 1
        elif k is GateKind.Z:
            p[w[0]] ^= 1
        elif k is GateKind.H:
            c[w[0]], p[w[0]] = p[w[0]], c[w[0]]
        elif k is GateKind.S:
            p[w[0]] ^= c[w[0]]
        elif k is GateKind.CNOT:
            ctl, tgt = w
            c[tgt] ^= c[ctl]
            p[ctl] ^= p[tgt]
        elif k is GateKind.TOFFOLI:
            a, b, t = w
            c[t] ^= c[a] & c[b]
            p[a] ^= c[b] & p[t]
            p[b] ^= c[a] & p[t]
        elif k is GateKind.FREDKIN:
            ctl, x, y = w
            # CNOT(y -> x); Toffoli(ctl, x -> y); CNOT(y -> x)
            c[x] ^= c[y]
            p[y] ^= p[x]
            c[y] ^= c[ctl] & c[x]
            p[ctl] ^= c[x] & p[y]
            p[x] ^= c[ctl] & p[y]
            c[x] ^= c[y]
            p[y] ^= p[x]
        elif k is GateKind.CR2:
            if out[op.classical_in]:
                p[w[0]] ^= c[w[0]]
                c[w[0]] ^= 1
        elif k is GateKind.MEASURE:
            out[op.classical_out] = c[w[0]]
            p[w[0]] = rng.next_bit()
    return tuple(out)


def _run_block(circuit: Circuit, seed: int, first_shot: int, n_shots: int) -> np.ndarray:
    """Vectorized executor: all shots of one block at once.

    Returns a (n_slots, n_shots) uint8 array of outcome bits, identical to
    running run_shot for each stream in the block.
    """
    bits = bit_block(seed, first_shot, n_shots, circuit.n_random_draws())
    c = np.zeros((circuit.n_wires, n_shots), dtype=np.uint8)
    p = np.zeros((circuit.n_wires, n_shots), dtype=np.uint8)
    out = np.zeros((circuit.n_slots, n_shots), dtype=np.uint8)
    d = 0
    for op in circuit.ops:
        k = op.kind
        w = op.wires
        if k is GateKind.PREPARE:
            c[w[0]] = op.value
            p[w[0]] = bits[d]
            d += 1
        elif k is GateKind.X:
            c[w[0]] ^= 1
        elif k is GateKind.Z:
            p[w[0]] ^= 1
        elif k is GateKind.H:
            tmp = c[w[0]].copy()
            c[w[0]] = p[w[0]]
            p[w[0]] = tmp
        elif k is GateKind.S:
            p[w[0]] ^= c[w[0]]
        elif k is GateKind.CNOT:
            ctl, tgt = w
            c[tgt] ^= c[ctl]
            p[ctl] ^= p[tgt]
        elif k is GateKind.TOFFOLI:
            a, b, t = w
            c[t] ^= c[a] & c[b]
            p[a] ^= c[b] & p[t]
            p[b] ^= c[a] & p[t]
        elif k is GateKind.FREDKIN:
            ctl, x, y = w
            c[x] ^= c[y]
            p[y] ^= p[x]
            c[y] ^= c[ctl] & c[x]
            p[ctl] ^= c[x] & p[y]
            p[x] ^= c[ctl] & p[y]
            c[x] ^= c[y]
            p[y] ^= p[x]
        elif k is GateKind.CR2:
            mask = out[op.classical_in]
            p[w[0]] ^= c[w[0]] & mask
            c[w[0]] ^= mask
        elif k is GateKind.MEASURE:
            out[op.classical_out] = c[w[0]]
            p[w[0]] = bits[d]
            d += 1
    return out


def assemble(outcomes: np.ndarray, slots_msb_first: list[int]) -> np.ndarray:
    """Pack per-slot outcome bits into integers, given slot order MSB first."""
    n = len(slots_msb_first)
    m = np.zeros(outcomes.shape[1], dtype=np.int64)
    for i, slot in enumerate(slots_msb_first):
        m |= outcomes[slot].astype(np.int64) << (n - 1 - i)
    return m


def sample(
    circuit: Circuit,
    shots: int,
    seed: int,
    slots_msb_first: list[int],
    *,
    modulus: int,
    a: int,
    threads: int = 1,
    first_shot: int = 0,
) -> Histogram:
    """Run independent shots and histogram the assembled outcome integer."""
    if shots < 1:
        raise ValueError("empty sample: shots must be >= 1")
    errors = validate(circuit)
    if errors:
        raise CircuitError(errors)
    n_bits = len(slots_msb_first)
    size = 1 << n_bits
    blocks = [
        (first_shot + lo, min(BLOCK_SHOTS, shots - lo))
        for lo in range(0, shots, BLOCK_SHOTS)
    ]

    def one_block(args: tuple[int, int]) -> np.ndarray:
        start, n = args
        m = assemble(_run_block(circuit, seed, start, n), slots_msb_first)
        return np.bincount(m, minlength=size)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(one_block, blocks))
    else:
        partials = [one_block(b) for b in blocks]
    total = np.sum(partials, axis=0)
    counts = {int(m): int(cnt) for m, cnt in enumerate(total) if cnt}
    return Histogram(
        counts=counts,
        modulus=modulus,
        a=a,
        shots=shots,
        seed=seed,
        n_input_bits=n_bits,
    )
