"""Portable random streams.

Every stream is a Philox4x64-10 counter-based generator keyed by
``(seed, stream_id)`` with the counter starting at zero, so a given seed and
stream name produce the same numbers in any Philox implementation.
``stream_id`` is the CRC-32 of the stream name.  Distributions are produced
from the raw 64-bit words by explicit transforms:

* uniform: top 53 bits, offset by half an ulp so values lie in (0, 1)
* normal: Box-Muller on consecutive uniform pairs
* Laplace, Cauchy: inverse CDF
* Student-t: inverse CDF (``scipy.special.stdtrit``)
* Bernoulli(p): ``u < p``
"""
from __future__ import annotations

import zlib

import numpy as np
from scipy import special

__all__ = ["Stream", "stream_id"]

_TWO_M53 = 2.0 ** -53


def stream_id(name: str) -> int:
    return zlib.crc32(name.encode("utf-8")) & 0xFFFFFFFF


class Stream:
    """Deterministic random stream for one stage of an experiment."""

    def __init__(self, seed: int, name: str = "default"):
        seed = int(seed)
        if seed < 0:
            raise ValueError(f"seed must be nonnegative, got {seed}")
        self.seed = seed
        self.name = name
        key = np.array([seed & 0xFFFFFFFFFFFFFFFF, stream_id(name)], dtype=np.uint64)
        self._bitgen = np.random.Philox(key=key, counter=np.zeros(4, dtype=np.uint64))

    def raw(self, n: int) -> np.ndarray:
        return np.asarray(self._bitgen.random_raw(int(n)), dtype=np.uint64)

    def uniform(self, size) -> np.ndarray:
        n = int(np.prod(size))
        u = ((self.raw(n) >> np.uint64(11)).astype(float) + 0.5) * _TWO_M53
        return u.reshape(size)

    def normal(self, size) -> np.ndarray:
        n = int(np.prod(size))
        half = (n + 1) // 2
        u = self.uniform(2 * half)
        u1, u2 = u[0::2], u[1::2]
        r = np.sqrt(-2.0 * np.log(u1))
        z = np.empty(2 * half)
        z[0::2] = r * np.cos(2.0 * np.pi * u2)
        z[1::2] = r * np.sin(2.0 * np.pi * u2)
        return z[:n].reshape(size)

    def laplace(self, size, scale: float = 1.0) -> np.ndarray:
        u = self.uniform(size) - 0.5
        return -scale * np.sign(u) * np.log1p(-2.0 * np.abs(u))

    def cauchy(self, size, gamma: float = 1.0) -> np.ndarray:
        return gamma * np.tan(np.pi * (self.uniform(size) - 0.5))

    def student_t(self, size, dof: float) -> np.ndarray:
        return special.stdtrit(dof, self.uniform(size))

    def bernoulli(self, size, p: float) -> np.ndarray:
        return self.uniform(size) < p
