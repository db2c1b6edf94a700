"""Counter-based pseudo-random numbers for reproducible Monte Carlo.

The generator is the SplitMix64 finalizer applied to (seed + counter * GOLDEN):
stateless, so any draw is addressable by its counter alone. Sample i owns the
counter block [i * 2**20, (i+1) * 2**20); draw j within a sample uses counter
i * 2**20 + j. A single cluster exploration draws at most one state per edge
incident to a visited vertex, which is far below 2**20 at the default edge cap.

The identical integer recurrence is implemented in the numba kernels; tests
pin known answers so the two paths cannot drift apart.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB

SAMPLE_STRIDE = 1 << 20

ALGORITHM = "splitmix64-counter/v1"


def mix64(z: int) -> int:
    """SplitMix64 output function on a 64-bit word."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def counter_value(seed: int, counter: int) -> int:
    """The 64-bit word at position `counter` of the stream keyed by `seed`."""
    return mix64((seed + counter * GOLDEN) & MASK64)


def counter_uniform(seed: int, counter: int) -> float:
    """Uniform double in [0, 1) built from the top 53 bits of the word."""
    return (counter_value(seed, counter) >> 11) * 2.0**-53
