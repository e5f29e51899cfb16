"""Portable deterministic random streams.

xoshiro256++ seeded through a splitmix64 expansion of a 64-bit seed, with
Box-Muller Gaussians. Everything is integer arithmetic masked to 64 bits, so a
given seed produces the same stream on every platform and Python build.
"""

from __future__ import annotations

import math

import numpy as np

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_TWO_PI = 2.0 * math.pi
_INV_2_53 = 1.0 / (1 << 53)
_INV_SQRT2 = 1.0 / math.sqrt(2.0)


def splitmix64(x: int) -> int:
    """One splitmix64 step: advance ``x`` by the golden gamma and mix."""
    z = (x + _GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class Prng:
    """xoshiro256++ generator.

    Parameters
    ----------
    seed
        Unsigned 64-bit seed. Negative or oversized integers are reduced
        modulo 2**64.
    """

    __slots__ = ("_s", "_spare")

    def __init__(self, seed: int) -> None:
        x = int(seed) & MASK64
        state = []
        for _ in range(4):
            state.append(splitmix64(x))
            x = (x + _GOLDEN) & MASK64
        self._s = state
        self._spare: float | None = None

    @classmethod
    def from_state(cls, state) -> "Prng":
        s = [int(v) & MASK64 for v in state]
        if len(s) != 4 or not any(s):
            raise ValueError("xoshiro256++ state must be four words, not all zero")
        obj = cls.__new__(cls)
        obj._s = s
        obj._spare = None
        return obj

    @classmethod
    def substream(cls, seed: int, index: int) -> "Prng":
        """Independent stream for trial ``index``: seeded by splitmix64(seed ^ index)."""
        return cls(splitmix64((int(seed) ^ int(index)) & MASK64))

    @property
    def state(self) -> tuple[int, int, int, int]:
        return tuple(self._s)

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s
        result = (_rotl((s0 + s3) & MASK64, 23) + s0) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    def random(self) -> float:
        """Uniform double in [0, 1) built from the top 53 bits."""
        return (self.next_u64() >> 11) * _INV_2_53

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection (no modulo bias)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % bound

    def normal(self) -> float:
        if self._spare is not None:
            g, self._spare = self._spare, None
            return g
        u1 = 1.0 - self.random()  # (0, 1], keeps log finite
        u2 = self.random()
        r = math.sqrt(-2.0 * math.log(u1))
        self._spare = r * math.sin(_TWO_PI * u2)
        return r * math.cos(_TWO_PI * u2)

    def normals(self, size: int) -> np.ndarray:
        return np.array([self.normal() for _ in range(size)], dtype=float)

    def complex_normals(self, size: int) -> np.ndarray:
        """Circular complex Gaussians with E|z|^2 = 1."""
        out = np.empty(size, dtype=complex)
        for i in range(size):
            re = self.normal()
            im = self.normal()
            out[i] = complex(re * _INV_SQRT2, im * _INV_SQRT2)
        return out

    def sample_without_replacement(self, population: int, k: int) -> list[int]:
        """``k`` distinct integers from range(population), sorted ascending."""
        if not 0 <= k <= population:
            raise ValueError(f"cannot draw {k} items from {population}")
        pool = list(range(population))
        for i in range(k):
            j = i + self.below(population - i)
            pool[i], pool[j] = pool[j], pool[i]
        return sorted(pool[:k])
