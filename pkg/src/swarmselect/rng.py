"""Portable, seedable random numbers.

Every stochastic decision in the package goes through a :class:`RandomSource`
so that one 64-bit seed replays a whole experiment.  The generator is
xoshiro256** (Blackman & Vigna) with its 256-bit state filled from the seed
by splitmix64, the seeding procedure recommended by the xoshiro authors.

Draw accounting, relied on by the optimizers:

* ``next_uniform`` consumes one 64-bit output.
* ``next_normal`` consumes two uniforms (Box-Muller, cosine branch only).
* ``next_index`` consumes one uniform.
"""

from __future__ import annotations

import math

import numpy as np

MASK64 = (1 << 64) - 1
_TWO_POW_M53 = 1.0 / (1 << 53)


def splitmix64(state: int) -> tuple[int, int]:
    """Advance a splitmix64 state; return ``(new_state, output)``."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class RandomSource:
    """xoshiro256** generator seeded through splitmix64.

    Not thread-safe; derive independent children with :meth:`split`.
    """

    def __init__(self, seed: int = 0):
        if not 0 <= int(seed) <= MASK64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.seed = int(seed)
        sm = self.seed
        s = []
        for _ in range(4):
            sm, out = splitmix64(sm)
            s.append(out)
        self._s = s

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed})"

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s
        result = (_rotl((s1 * 5) & MASK64, 7) * 9) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    def _unit(self) -> float:
        # top 53 bits -> [0, 1)
        return (self.next_u64() >> 11) * _TWO_POW_M53

    def next_uniform(self, lo: float = 0.0, hi: float = 1.0) -> float:
        """One draw from ``[lo, hi)``."""
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValueError("uniform bounds must be finite")
        if lo >= hi:
            raise ValueError(f"need lo < hi, got lo={lo}, hi={hi}")
        value = lo + (hi - lo) * self._unit()
        if value >= hi:  # rounding at the top end of tiny intervals
            value = math.nextafter(hi, lo)
        return value

    def next_normal(self) -> float:
        """Standard normal variate from two uniforms via Box-Muller."""
        u1 = 1.0 - self._unit()  # (0, 1], keeps log finite
        u2 = self._unit()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)

    def next_index(self, n: int) -> int:
        """Uniform integer in ``range(n)``."""
        if n < 1:
            raise ValueError("n must be positive")
        return min(int(self._unit() * n), n - 1)

    def uniform_array(self, n: int, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
        return np.array([self.next_uniform(lo, hi) for _ in range(n)], dtype=float)

    def normal_array(self, n: int) -> np.ndarray:
        return np.array([self.next_normal() for _ in range(n)], dtype=float)

    def shuffle(self, items: list) -> list:
        """Fisher-Yates shuffle, returning a new list."""
        out = list(items)
        for i in range(len(out) - 1, 0, -1):
            j = self.next_index(i + 1)
            out[i], out[j] = out[j], out[i]
        return out

    def split(self, stream: int) -> "RandomSource":
        """Child source for an independent stream: seed xor stream, through splitmix64."""
        _, child_seed = splitmix64((self.seed ^ int(stream)) & MASK64)
        return RandomSource(child_seed)
