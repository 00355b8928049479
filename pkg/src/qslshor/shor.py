"""Order finding and factoring for N = 15.

Synthesizes the controlled modular multiplier networks, assembles the
full subroutine circuit with its semiclassical measurement schedule, and
does the classical pre/post-processing: continued fractions to recover
the order, then gcd extraction of the factors.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .circuit import Circuit
from .engine import Histogram, run_shot, sample
from .rng import RandomSource

N = 15
N_OUTPUT = 4  # qubits in the modular-arithmetic register
N_INPUT = 2 * N_OUTPUT  # phase-estimation register
Q = 1 << N_INPUT  # 256 possible outcomes

# Elements of the multiplicative group mod 15 usable as subroutine bases
# (excluding 1 and N-1 = 14).
BASES = (2, 4, 7, 8, 11, 13)

# Multiplication by 2, 4, 8 mod 15 rotates the 4-bit register; realized
# as chains of adjacent controlled swaps on value-bit positions, listed
# left to right.  Multiplication by 13, 11, 7 is the complement (times
# -1 mod 15) of 2, 4, 8, realized by a closing layer of CNOTs from the
# control onto every register wire.
_ROTATION_SWAPS = {
    2: ((3, 2), (2, 1), (1, 0)),
    4: ((3, 1), (2, 0)),
    8: ((1, 0), (2, 1), (3, 2)),
}
_COMPLEMENT_OF = {13: 2, 11: 4, 7: 8}


@dataclass(frozen=True)
class ShorParams:
    a: int
    modulus: int = N

    def __post_init__(self):
        if self.modulus != N:
            raise ValueError(f"only modulus {N} is supported, got {self.modulus}")
        if self.a not in BASES:
            raise ValueError(f"base must be one of {BASES}, got {self.a}")


@dataclass(frozen=True)
class MultiplierSpec:
    """Gate network applying x -> a_eff * x (mod 15) when the control is 1.

    Each entry is ("fredkin", (i, j)) swapping value bits i and j under the
    control, or ("cnot", (i,)) flipping value bit i when the control is 1.
    """

    multiplicand: int
    gates: tuple[tuple[str, tuple[int, ...]], ...]


@dataclass(frozen=True)
class PowerScheduleEntry:
    k: int
    exponent: int  # 2**k
    multiplicand: int  # a**(2**k) mod 15
    is_identity: bool


@dataclass
class FactorReport:
    modulus: int
    a: int | None
    m: int | None
    r: int | None
    factors: set[int]
    invocations: int
    seed: int
    attempts: list[dict] = field(default_factory=list)

    def to_json(self) -> str:
        obj = {
            "N": self.modulus,
            "a": self.a,
            "m": self.m,
            "r": self.r,
            "factors": sorted(self.factors),
            "invocations": self.invocations,
            "seed": self.seed,
            "attempts": self.attempts,
        }
        return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def multiplier_circuit(a_eff: int) -> MultiplierSpec:
    """Canonical controlled multiplier network for one base power."""
    if a_eff == 1:
        raise ValueError("identity multiplier must be omitted, not synthesized")
    if a_eff not in BASES:
        raise ValueError(f"no multiplier network for {a_eff} (valid: {BASES})")
    rot = _COMPLEMENT_OF.get(a_eff, a_eff)
    gates: list[tuple[str, tuple[int, ...]]] = [
        ("fredkin", pair) for pair in _ROTATION_SWAPS[rot]
    ]
    if a_eff in _COMPLEMENT_OF:
        gates += [("cnot", (i,)) for i in (3, 2, 1, 0)]
    return MultiplierSpec(a_eff, tuple(gates))


def power_schedule(a: int) -> list[PowerScheduleEntry]:
    """Effective multiplicand a^(2^k) mod 15 for each input qubit k."""
    if math.gcd(a, N) != 1:
        raise ValueError(f"gcd({a},{N}) != 1")
    entries = []
    for k in range(N_INPUT):
        m = pow(a, 1 << k, N)
        entries.append(PowerScheduleEntry(k, 1 << k, m, m == 1))
    return entries


# Wire layout: input qubit k (controls the multiplier for a^(2^k)) is
# wire k; output register value bit b is wire 8 + (3 - b), i.e. q3..q0
# top to bottom.  Outcome slot k records input qubit k.
def output_wire(bit: int) -> int:
    return N_INPUT + (N_OUTPUT - 1 - bit)


def build_subroutine(params: ShorParams) -> Circuit:
    """The full order-finding circuit with semiclassical inverse QFT.

    All input qubits are simulated explicitly, including the ones whose
    multiplier is the identity.  Multiplier blocks are laid out highest
    power first; input qubits are then measured in decreasing k, the R2
    on qubit k classically controlled by the outcome of qubit k+1.
    """
    circ = Circuit(n_wires=N_INPUT + N_OUTPUT, n_slots=N_INPUT)
    for k in range(N_INPUT):
        circ.prepare(k, 0)
    for b in range(N_OUTPUT - 1, -1, -1):
        circ.prepare(output_wire(b), 1 if b == 0 else 0)
    for k in range(N_INPUT):
        circ.h(k)
    for entry in reversed(power_schedule(params.a)):
        if entry.is_identity:
            continue
        for kind, bits in multiplier_circuit(entry.multiplicand).gates:
            if kind == "fredkin":
                circ.fredkin(entry.k, output_wire(bits[0]), output_wire(bits[1]))
            else:
                circ.cnot(entry.k, output_wire(bits[0]))
    for k in range(N_INPUT - 1, -1, -1):
        if k + 1 < N_INPUT:
            circ.cr2(k, classical_in=k + 1)
        circ.h(k)
        circ.measure(k, classical_out=k)
    return circ


# Outcome of input qubit k lands in bit position 2n-1-k of m, so slot 0
# (the qubit controlling the plain multiplier by a) is most significant.
SLOTS_MSB_FIRST = list(range(N_INPUT))


def assemble_m(outcome_bits: tuple[int, ...]) -> int:
    m = 0
    for k in SLOTS_MSB_FIRST:
        m = (m << 1) | outcome_bits[k]
    return m


def run_subroutine(
    params: ShorParams, shots: int, seed: int, threads: int = 1
) -> Histogram:
    """Sample the order-finding circuit and histogram the outcome integer."""
    return sample(
        build_subroutine(params),
        shots,
        seed,
        SLOTS_MSB_FIRST,
        modulus=params.modulus,
        a=params.a,
        threads=threads,
    )


def continued_fraction_order(m: int, q: int = Q, modulus: int = N) -> int | None:
    """Order candidate from the continued fraction expansion of m/q.

    Returns the largest convergent denominator r < modulus whose
    convergent approximates m/q to within 1/(2q); None when m = 0.
    """
    if not 0 <= m < q:
        raise ValueError(f"m must lie in [0, {q}), got {m}")
    if m == 0:
        return None
    best = None
    # Convergents p_i/q_i of the continued fraction of m/q.
    num, den = m, q
    p_prev, p_cur = 0, 1
    q_prev, q_cur = 1, 0
    while den:
        a_i = num // den
        num, den = den, num - a_i * den
        p_prev, p_cur = p_cur, a_i * p_cur + p_prev
        q_prev, q_cur = q_cur, a_i * q_cur + q_prev
        # |m/q - p/r| <= 1/(2q)  <=>  2*|m*r - p*q| <= r
        if q_cur < modulus and 2 * abs(m * q_cur - p_cur * q) <= q_cur:
            if best is None or q_cur > best:
                best = q_cur
    return best


def factor_from_order(a: int, r: int, modulus: int = N) -> set[int] | None:
    """Nontrivial factors from an even order, or None."""
    if r < 1:
        raise ValueError(f"order must be positive, got {r}")
    if r % 2:
        return None
    y = pow(a, r // 2, modulus)
    if y == modulus - 1:
        return None
    factors = {
        g
        for g in (math.gcd(y - 1, modulus), math.gcd(y + 1, modulus))
        if 1 < g < modulus
    }
    return factors or None


# Substream reserved for the driver's own base draws, far above any shot
# index used by the sampler.
_DRIVER_STREAM = 1 << 62


def shor_driver(
    seed: int,
    modulus: int = N,
    max_retries: int = 32,
    a: int | None = None,
) -> FactorReport:
    """End-to-end factoring: draw a base, run one subroutine shot, post-process.

    A fresh base is drawn for each retry.  A candidate order is accepted
    only if it really is an order of the base (a^r = 1 mod N); bases that
    share a factor with N short-circuit without any subroutine call.
    """
    if modulus != N:
        raise ValueError(f"only modulus {N} is supported")
    rng = RandomSource(seed, stream=_DRIVER_STREAM)
    circuits: dict[int, Circuit] = {}
    attempts: list[dict] = []
    invocations = 0
    for _ in range(max_retries + 1):
        base = a if a is not None else BASES[rng.next_below(len(BASES))]
        g = math.gcd(base, modulus)
        if g > 1:
            factors = {g, modulus // g}
            attempts.append({"a": base, "m": None, "r": None, "gcd_shortcut": g})
            return FactorReport(
                modulus, base, None, None, factors, invocations, seed, attempts
            )
        if base not in circuits:
            circuits[base] = build_subroutine(ShorParams(base))
        m = assemble_m(run_shot(circuits[base], seed, invocations))
        invocations += 1
        r = continued_fraction_order(m, Q, modulus)
        attempt = {"a": base, "m": m, "r": r, "gcd_shortcut": None}
        attempts.append(attempt)
        if r is None or pow(base, r, modulus) != 1:
            continue
        found = factor_from_order(base, r, modulus)
        if found:
            f = min(found)
            return FactorReport(
                modulus, base, m, r, {f, modulus // f}, invocations, seed, attempts
            )
    return FactorReport(modulus, None, None, None, set(), invocations, seed, attempts)
