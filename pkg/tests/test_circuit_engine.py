"""Circuit validation, execution determinism, and histogram plumbing."""

import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qslshor.circuit import Circuit, CircuitError, GateKind, Operation, validate
from qslshor.engine import Histogram, _run_block, assemble, merge, run_shot, sample
from qslshor.shor import SLOTS_MSB_FIRST, ShorParams, build_subroutine


def _h_measure_circuit(n_h: int) -> Circuit:
    circ = Circuit(n_wires=1, n_slots=1)
    circ.prepare(0, 0)
    for _ in range(n_h):
        circ.h(0)
    circ.measure(0, 0)
    return circ


def test_validate_accepts_shor_circuit():
    assert validate(build_subroutine(ShorParams(7))) == []


def test_validate_duplicate_wire():
    circ = Circuit(n_wires=2, n_slots=1)
    circ.prepare(0, 0)
    circ.cnot(0, 0)
    circ.measure(0, 0)
    errors = validate(circ)
    assert any("duplicate wire" in e for e in errors)


def test_validate_classical_dependency_order():
    circ = Circuit(n_wires=2, n_slots=1)
    circ.prepare(0, 0)
    circ.prepare(1, 0)
    circ.cr2(0, classical_in=0)  # slot 0 measured only later
    circ.measure(1, 0)
    errors = validate(circ)
    assert any("classical dependency order" in e for e in errors)


def test_validate_wire_range_and_slots():
    circ = Circuit(n_wires=1, n_slots=2)
    circ.prepare(0, 0)
    circ.h(5)
    circ.measure(0, 0)
    circ.measure(0, 0)
    errors = validate(circ)
    assert any("out of range" in e for e in errors)
    assert any("written twice" in e for e in errors)
    assert any("slot 1 never written" in e for e in errors)


def test_validate_arity():
    circ = Circuit(n_wires=3, n_slots=0)
    circ.add(Operation(GateKind.CNOT, (0, 1, 2)))
    assert any("expected 2 wires" in e for e in validate(circ))


def test_run_shot_rejects_invalid_circuit():
    circ = Circuit(n_wires=1, n_slots=1)
    circ.cnot(0, 0)
    with pytest.raises(CircuitError):
        run_shot(circ, 0, 0)


def test_double_hadamard_is_deterministic_zero():
    circ = _h_measure_circuit(2)
    assert all(run_shot(circ, 5, i) == (0,) for i in range(2000))


def test_single_hadamard_is_unbiased():
    circ = _h_measure_circuit(1)
    hist = sample(circ, 10**5, 7, [0], modulus=15, a=2)
    assert abs(hist.counts.get(1, 0) / 10**5 - 0.5) < 0.005


def test_run_shot_deterministic():
    circ = build_subroutine(ShorParams(7))
    assert run_shot(circ, 123, 45) == run_shot(circ, 123, 45)


def _three_test_circuits():
    yield build_subroutine(ShorParams(7)), SLOTS_MSB_FIRST
    yield build_subroutine(ShorParams(11)), SLOTS_MSB_FIRST
    bell = Circuit(n_wires=2, n_slots=2)
    bell.prepare(0, 0)
    bell.prepare(1, 0)
    bell.h(0)
    bell.cnot(0, 1)
    bell.measure(0, 0)
    bell.measure(1, 1)
    yield bell, [0, 1]


def test_scalar_and_vectorized_executors_agree():
    for circ, slots in _three_test_circuits():
        out = _run_block(circ, seed=31, first_shot=0, n_shots=10**4)
        packed = assemble(out, slots)
        for i in (0, 1, 17, 9999):
            bits = run_shot(circ, 31, i)
            m = 0
            for s in slots:
                m = (m << 1) | bits[s]
            assert m == packed[i]
        # full equality on a smaller stretch
        for i in range(256):
            bits = run_shot(circ, 31, i)
            assert list(bits) == list(out[:, i])


def test_sample_threads_do_not_change_histogram():
    circ = build_subroutine(ShorParams(8))
    h1 = sample(circ, 2 * 10**5, 9, SLOTS_MSB_FIRST, modulus=15, a=8, threads=1)
    h4 = sample(circ, 2 * 10**5, 9, SLOTS_MSB_FIRST, modulus=15, a=8, threads=4)
    assert h1.counts == h4.counts
    assert h1.to_json() == h4.to_json()


def test_sample_conservation_and_empty():
    circ = _h_measure_circuit(1)
    hist = sample(circ, 1000, 0, [0], modulus=15, a=2)
    assert sum(hist.counts.values()) == 1000
    with pytest.raises(ValueError, match="empty sample"):
        sample(circ, 0, 0, [0], modulus=15, a=2)


def test_merge_identity_and_conservation():
    circ = build_subroutine(ShorParams(4))
    h = sample(circ, 5 * 10**4, 1, SLOTS_MSB_FIRST, modulus=15, a=4)
    empty = dataclasses.replace(h, counts={}, shots=0)
    assert merge(h, empty).counts == h.counts
    h2 = sample(circ, 5 * 10**4, 2, SLOTS_MSB_FIRST, modulus=15, a=4)
    merged = merge(h, h2)
    assert merged.shots == 10**5
    assert sum(merged.counts.values()) == 10**5
    assert merge(h, h2).counts == merge(h2, h).counts


def test_merge_rejects_metadata_mismatch():
    circ = build_subroutine(ShorParams(4))
    h = sample(circ, 100, 1, SLOTS_MSB_FIRST, modulus=15, a=4)
    other = dataclasses.replace(h, a=7)
    with pytest.raises(ValueError, match="metadata mismatch"):
        merge(h, other)


def test_split_run_matches_one_big_run_exactly():
    # Disjoint shot ranges of one seed partition the substreams, so the
    # merged histogram is bit-identical to a single run.
    circ = build_subroutine(ShorParams(2))
    whole = sample(circ, 10**4, 77, SLOTS_MSB_FIRST, modulus=15, a=2)
    lo = sample(circ, 5000, 77, SLOTS_MSB_FIRST, modulus=15, a=2)
    hi = sample(circ, 5000, 77, SLOTS_MSB_FIRST, modulus=15, a=2, first_shot=5000)
    assert merge(lo, hi).counts == whole.counts


def test_histogram_json_roundtrip():
    circ = build_subroutine(ShorParams(13))
    h = sample(circ, 10**4, 5, SLOTS_MSB_FIRST, modulus=15, a=13)
    again = Histogram.from_json(h.to_json())
    assert again == h
    assert again.to_json() == h.to_json()


def test_histogram_csv_contents():
    h = Histogram({0: 3, 128: 1}, modulus=15, a=4, shots=4, seed=0, n_input_bits=8)
    lines = h.to_csv().strip().split("\n")
    assert lines[0] == "m,phase,count,frequency"
    assert lines[1] == "0,0.0,3,0.75"
    assert lines[2] == "128,0.5,1,0.25"


@given(
    counts=st.dictionaries(st.integers(0, 255), st.integers(1, 50), max_size=8),
    other=st.dictionaries(st.integers(0, 255), st.integers(1, 50), max_size=8),
)
@settings(max_examples=50, deadline=None)
def test_merge_commutes_on_counts(counts, other):
    def hist(c):
        return Histogram(
            dict(c), modulus=15, a=7, shots=sum(c.values()) or 1,
            seed=0, n_input_bits=8,
        )

    if not counts or not other:
        return
    assert merge(hist(counts), hist(other)).counts == merge(hist(other), hist(counts)).counts
