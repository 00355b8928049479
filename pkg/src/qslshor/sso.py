"""Square statistical overlap between sampled and ideal distributions.

The overlap of two distributions is the squared Bhattacharyya
coefficient, (sum_j sqrt(e_j * o_j))^2.  The statistical error on a
sampled histogram is estimated by a seeded multinomial bootstrap and
reported as one standard deviation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .engine import Histogram
from .oracle import Distribution


@dataclass(frozen=True)
class SsoResult:
    value: float
    stderr: float
    shots: int
    replicates: int

    def __str__(self) -> str:
        return f"{self.value:.4f} +- {self.stderr:.4f}"


def overlap(p: np.ndarray, q: np.ndarray) -> float:
    """Squared Bhattacharyya coefficient of two probability vectors."""
    if p.shape != q.shape:
        raise ValueError(f"outcome spaces differ: {p.shape} vs {q.shape}")
    return float(np.sum(np.sqrt(p * q)) ** 2)


def _counts_vector(histogram: Histogram, size: int) -> np.ndarray:
    counts = np.zeros(size)
    for m, c in histogram.counts.items():
        if not 0 <= m < size:
            raise ValueError(f"outcome {m} outside [0, {size})")
        counts[m] = c
    return counts


def sso(
    empirical: Histogram,
    ideal: Distribution,
    bootstrap_replicates: int = 200,
    bootstrap_seed: int = 0,
) -> SsoResult:
    """Overlap of a sampled histogram with the ideal distribution."""
    if not empirical.counts or empirical.shots < 1:
        raise ValueError("empty histogram")
    counts = _counts_vector(empirical, len(ideal.probs))
    value = overlap(counts / empirical.shots, ideal.probs)
    rng = np.random.default_rng(bootstrap_seed)
    replicas = rng.multinomial(
        empirical.shots, counts / empirical.shots, size=bootstrap_replicates
    )
    values = [overlap(rep / empirical.shots, ideal.probs) for rep in replicas]
    return SsoResult(
        value=value,
        stderr=float(np.std(values)),
        shots=empirical.shots,
        replicates=bootstrap_replicates,
    )
