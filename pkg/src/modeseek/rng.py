"""SplitMix64 generator with Box-Muller normals.

The state is a plain 64-bit integer, so a given seed yields the same stream
in any language that implements SplitMix64 the same way.
"""
from __future__ import annotations

import math

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform double in the open interval (0, 1) from the top 53 bits."""
        return ((self.next_u64() >> 11) + 0.5) * 2.0**-53

    def normal_pair(self) -> tuple[float, float]:
        """Two independent standard normals (basic Box-Muller)."""
        u1 = self.uniform()
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        return r * math.cos(2.0 * math.pi * u2), r * math.sin(2.0 * math.pi * u2)
