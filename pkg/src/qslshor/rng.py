"""Counter-based random bit generation.

Every random bit consumed by the simulator is addressed by a triple
(seed, stream, counter).  Streams are assigned one per shot, so shots can
be executed in any order, in any number of threads, or in bulk with numpy,
and always see the same bits.  The generator is two rounds of the
splitmix64 finalizer, which passes the usual equidistribution smoke tests
and needs no per-stream state.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB


def mix64(x: int) -> int:
    """splitmix64 finalizer: a bijective scrambling of a 64-bit word."""
    x &= _MASK
    x ^= x >> 30
    x = (x * _MIX_A) & _MASK
    x ^= x >> 27
    x = (x * _MIX_B) & _MASK
    x ^= x >> 31
    return x


def stream_state(seed: int, stream: int) -> int:
    """64-bit state identifying one substream of a seeded source."""
    return mix64((mix64(seed) + (stream * _GOLDEN)) & _MASK)


def draw64(state: int, counter: int) -> int:
    """The counter-th 64-bit word of the substream with the given state."""
    return mix64((state + (counter * _GOLDEN)) & _MASK)


class RandomSource:
    """Seeded stream of unbiased bits for one execution context.

    Instances with equal (seed, stream) emit identical bit sequences on
    every platform.  Distinct streams are statistically independent.
    """

    def __init__(self, seed: int, stream: int = 0):
        self.seed = seed
        self.stream = stream
        self._state = stream_state(seed, stream)
        self._counter = 0

    def next_bit(self) -> int:
        v = draw64(self._state, self._counter) & 1
        self._counter += 1
        return v

    def next_bits(self, n: int) -> int:
        """n fresh bits packed into an integer, first bit most significant."""
        v = 0
        for _ in range(n):
            v = (v << 1) | self.next_bit()
        return v

    def next_below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection sampling."""
        if n <= 0:
            raise ValueError("n must be positive")
        k = max(1, (n - 1).bit_length())
        while True:
            v = self.next_bits(k)
            if v < n:
                return v


def bit_block(seed: int, first_stream: int, n_streams: int, n_draws: int) -> np.ndarray:
    """Random bits for a contiguous block of streams, as uint8.

    Returns shape (n_draws, n_streams); entry [d, i] equals the d-th
    next_bit() of RandomSource(seed, first_stream + i).
    """
    golden = np.uint64(_GOLDEN)
    streams = np.arange(first_stream, first_stream + n_streams, dtype=np.uint64)
    state = _mix64_vec(np.uint64(mix64(seed)) + streams * golden)
    out = np.empty((n_draws, n_streams), dtype=np.uint8)
    for d in range(n_draws):
        offset = np.uint64((d * _GOLDEN) & _MASK)
        out[d] = (_mix64_vec(state + offset) & np.uint64(1)).astype(np.uint8)
    return out


def _mix64_vec(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64, copy=True)
    x ^= x >> np.uint64(30)
    x *= np.uint64(_MIX_A)
    x ^= x >> np.uint64(27)
    x *= np.uint64(_MIX_B)
    x ^= x >> np.uint64(31)
    return x
