"""Portable seeded generator used for all weight initialisation.

State update is xorshift64* (shifts 12, 25, 27; multiplier
0x2545F4914F6CDD1D) seeded through one splitmix64 step. A uniform double
in [0, 1) is the top 53 bits of the output times 2**-53, so any
implementation following this description reproduces the same stream.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_MULT = 0x2545F4914F6CDD1D


def splitmix64(x: int) -> int:
    z = (x + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class XorShift64Star:
    def __init__(self, seed: int):
        if seed < 0:
            raise ValueError("seed must be unsigned")
        self.state = splitmix64(seed & _MASK) or 1

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & _MASK
        x ^= x >> 27
        self.state = x
        return (x * _MULT) & _MASK

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform(self, low: float, high: float) -> float:
        return low + (high - low) * self.random()

    def uniform_list(self, n: int, low: float, high: float) -> list[float]:
        return [self.uniform(low, high) for _ in range(n)]
