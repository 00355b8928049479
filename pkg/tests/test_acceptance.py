"""Acceptance suite: one test per criterion, one printed verdict line each.

Run with `pytest tests/test_acceptance.py -s` to see the verdict lines.
"""

import time

import numpy as np
import pytest

from qslshor import selftest
from qslshor.oracle import ideal_distribution
from qslshor.shor import (
    BASES,
    ShorParams,
    continued_fraction_order,
    run_subroutine,
    shor_driver,
)
from qslshor.sso import sso

SHOTS = 10**6
SEED = 20240915

ORDER = {2: 4, 4: 2, 7: 4, 8: 4, 11: 2, 13: 4}


def _verdict(name: str, ok: bool, detail: str = ""):
    print(f"[{'PASS' if ok else 'FAIL'}] {name}" + (f" — {detail}" if detail else ""))
    assert ok, f"{name}: {detail}"


@pytest.fixture(scope="module")
def histograms():
    return {a: run_subroutine(ShorParams(a), SHOTS, SEED) for a in BASES}


def test_criterion_1_gate_tables():
    t0 = time.time()
    results = [
        selftest.check_gate_bijections(),
        selftest.check_involutions(),
        selftest.check_hadamard_conjugations(),
        selftest.check_toffoli_tables(),
    ]
    elapsed = time.time() - t0
    bad = [f for r in results for f in r.failures]
    cases = sum(r.cases for r in results)
    _verdict(
        "criterion 1: exhaustive gate tables",
        not bad and elapsed < 1.0,
        f"{cases} cases in {elapsed:.3f}s" + (f"; failures: {bad[:3]}" if bad else ""),
    )


def test_criterion_2_multiplier_equivalence():
    t0 = time.time()
    result = selftest.check_multipliers()
    elapsed = time.time() - t0
    _verdict(
        "criterion 2: multiplier equivalence (192 cases)",
        result.ok and result.cases >= 192 and elapsed < 1.0,
        f"{result.cases} cases in {elapsed:.3f}s"
        + (f"; failures: {result.failures[:3]}" if result.failures else ""),
    )


def test_criterion_3_ideal_oracle():
    t0 = time.time()
    ok = True
    detail = []
    for a in BASES:
        dist = ideal_distribution(ShorParams(a))
        r = ORDER[a]
        support = [s * 256 // r for s in range(r)]
        uniform = np.allclose(dist.probs[support], 1.0 / r, atol=1e-10)
        clean = abs(float(np.sum(dist.probs)) - 1.0) < 1e-10
        if dist.support() != support or not uniform or not clean:
            ok = False
            detail.append(f"a={a} support={dist.support()}")
    elapsed = time.time() - t0
    _verdict(
        "criterion 3: ideal oracle peak structure",
        ok and elapsed < 10.0,
        f"6 bases in {elapsed:.2f}s" + ("; " + "; ".join(detail) if detail else ""),
    )


def test_criterion_4_sso_reproduction(histograms):
    t0 = time.time()
    measured = {}
    for a in BASES:
        measured[a] = sso(histograms[a], ideal_distribution(ShorParams(a)))
    elapsed = time.time() - t0
    targets = {2: (0.999, None), 4: (0.999, None), 11: (0.999, None),
               7: (0.933, 0.01), 8: (0.984, 0.01), 13: (0.984, 0.01)}
    ok = True
    lines = []
    for a in BASES:
        value = measured[a].value
        center, tol = targets[a]
        good = value >= center if tol is None else abs(value - center) <= tol
        ok = ok and good
        lines.append(f"a={a}: {measured[a]}")
    _verdict(
        "criterion 4: SSO reproduction at 10^6 shots",
        ok,
        "; ".join(lines) + f" ({elapsed:.2f}s scoring)",
    )


def test_criterion_5_good_candidate_probability(histograms):
    ok = True
    lines = []
    for a in BASES:
        hist = histograms[a]
        good = 0
        for m, c in hist.counts.items():
            if continued_fraction_order(m) == ORDER[a]:
                good += c
        frac = good / hist.shots
        ok = ok and abs(frac - 0.5) <= 0.005
        lines.append(f"a={a}: {frac:.4f}")
    _verdict("criterion 5: good-candidate probability 0.5 +- 0.005", ok, "; ".join(lines))


def test_criterion_6_deterministic_tail(histograms):
    ok = True
    lines = []
    for a in BASES:
        # input qubits with identity multipliers occupy the low bits of m
        identity_mask = (1 << (8 - (1 if a in (4, 11) else 2))) - 1
        bad = sum(c for m, c in histograms[a].counts.items() if m & identity_mask)
        ok = ok and bad == 0
        lines.append(f"a={a}: {bad} nonzero-tail shots")
    _verdict("criterion 6: identity-multiplier qubits always measure 0", ok, "; ".join(lines))


def test_criterion_7_end_to_end_factoring():
    t0 = time.time()
    invocations = []
    ok = True
    for seed in range(1000):
        report = shor_driver(seed=seed)
        invocations.append(report.invocations)
        if report.factors != {3, 5}:
            ok = False
    mean = sum(invocations) / len(invocations)
    elapsed = time.time() - t0
    _verdict(
        "criterion 7: 1000 driver runs factor 15",
        ok and 1.5 <= mean <= 3.0 and elapsed < 30.0,
        f"mean subroutine invocations {mean:.3f} in {elapsed:.1f}s",
    )


def test_criterion_8_reproducibility(histograms):
    h1 = histograms[7]
    h4 = run_subroutine(ShorParams(7), SHOTS, SEED, threads=4)
    again = run_subroutine(ShorParams(7), SHOTS, SEED, threads=1)
    ok = h1.to_json() == h4.to_json() == again.to_json()
    _verdict("criterion 8: bit-identical histograms across reruns and threads", ok)
