"""splitmix64 generator; the only entropy source in the package.

Pure-integer arithmetic so that every platform and language that implements
the same constants reproduces the same draws.
"""
from __future__ import annotations

import math

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB


class SplitMix64:
    def __init__(self, seed: int):
        if not 0 <= seed <= MASK64:
            raise ValueError(f"seed must fit in an unsigned 64-bit integer, got {seed}")
        self.state = seed

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * MIX1) & MASK64
        z = ((z ^ (z >> 27)) * MIX2) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection (no modulo bias)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def uniform(self) -> float:
        """Uniform float in ``[0, 1)`` from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def gauss(self) -> float:
        """Standard normal draw via Box-Muller (one value per two uniforms)."""
        u1 = 1.0 - self.uniform()  # (0, 1]
        u2 = self.uniform()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)


def partial_shuffle(n: int, m: int, rng: SplitMix64) -> list[int]:
    """First ``m`` entries of a Fisher-Yates shuffle of ``0..n-1``."""
    if not 0 <= m <= n:
        raise ValueError(f"cannot draw {m} of {n}")
    perm = list(range(n))
    for i in range(m):
        j = i + rng.below(n - i)
        perm[i], perm[j] = perm[j], perm[i]
    return perm[:m]


def sample_indices(n: int, m: int, seed: int) -> list[int]:
    """Sorted uniform ``m``-subset of ``0..n-1`` for ``seed``."""
    return sorted(partial_shuffle(n, m, SplitMix64(seed)))
