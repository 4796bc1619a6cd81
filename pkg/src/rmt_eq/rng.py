"""Deterministic random number generation.

Every stochastic quantity in this package is drawn from a single frozen
generator so that runs are bit-reproducible across platforms and across
implementations in other languages.  No platform default RNG is used
anywhere.

Generator
    SplitMix64.  State is one 64-bit unsigned integer.  Each draw adds the
    increment 0x9E3779B97F4A7C15 to the state and returns mix64(state),
    where mix64 is

        z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
        z ^= z >> 27;  z *= 0x94D049BB133111EB
        z ^= z >> 31

    with all arithmetic modulo 2**64.

Uniforms
    A draw u is mapped to the double (u >> 11) * 2**-53 in [0, 1).

Gaussians
    Box-Muller on two consecutive uniform draws (u1, u2):

        r  = sqrt(-2 * ln(1 - u1))        # 1 - u1 lies in (0, 1]
        z0 = r * cos(2 * pi * u2)
        z1 = r * sin(2 * pi * u2)

    Draws are consumed in pairs; a request for an odd count consumes a full
    final pair and discards its sine component.

Sample seeds
    ``derive_sample_seed(master, index)`` applies mix64 to
    ``master XOR ((index + 1) * 0x9E3779B97F4A7C15 mod 2**64)``, giving every
    Monte Carlo sample an independent stream without coordination between
    workers.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

_U64_GOLDEN = np.uint64(_GOLDEN)
_U64_MIX1 = np.uint64(_MIX1)
_U64_MIX2 = np.uint64(_MIX2)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_TO_DOUBLE = 2.0 ** -53


def mix64(x: int) -> int:
    """SplitMix64 finalizer on a 64-bit unsigned integer."""
    z = x & _MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


def derive_sample_seed(master_seed: int, index: int) -> int:
    """Mix (master_seed, index) into an independent per-sample seed.

    Defined as mix64(master_seed XOR (index + 1) * 0x9E3779B97F4A7C15), all
    modulo 2**64.  The +1 keeps index 0 from collapsing to the bare master
    seed.
    """
    if master_seed < 0 or index < 0:
        raise ValueError("master_seed and index must be nonnegative")
    return mix64((master_seed & _MASK64) ^ ((index + 1) * _GOLDEN & _MASK64))


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = z ^ (z >> _S30)
    z = z * _U64_MIX1
    z = z ^ (z >> _S27)
    z = z * _U64_MIX2
    return z ^ (z >> _S31)


class RngStream:
    """SplitMix64 stream.  Single-owner: never share one across samples."""

    def __init__(self, seed: int):
        if seed < 0:
            raise ValueError("seed must be nonnegative")
        self._state = seed & _MASK64

    @property
    def state(self) -> int:
        return self._state

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        return mix64(self._state)

    def next_u64_block(self, count: int) -> np.ndarray:
        """Vectorized draw of `count` outputs, bit-identical to `count`
        sequential next_u64 calls."""
        if count < 0:
            raise ValueError("count must be nonnegative")
        # SplitMix64 state advances by a fixed increment, so output i is a
        # pure function of state + (i+1)*GOLDEN; the whole block vectorizes.
        offsets = np.arange(1, count + 1, dtype=np.uint64) * _U64_GOLDEN
        out = _mix64_array(np.uint64(self._state) + offsets)
        self._state = (self._state + count * _GOLDEN) & _MASK64
        return out

    def random(self) -> float:
        return (self.next_u64() >> 11) * _TO_DOUBLE

    def random_block(self, count: int) -> np.ndarray:
        return (self.next_u64_block(count) >> _S11).astype(np.float64) * _TO_DOUBLE

    def standard_normal(self, count: int) -> np.ndarray:
        """`count` standard Gaussians via Box-Muller on uniform pairs."""
        if count < 0:
            raise ValueError("count must be nonnegative")
        pairs = (count + 1) // 2
        u = self.random_block(2 * pairs)
        r = np.sqrt(-2.0 * np.log1p(-u[0::2]))
        theta = (2.0 * np.pi) * u[1::2]
        out = np.empty(2 * pairs)
        out[0::2] = r * np.cos(theta)
        out[1::2] = r * np.sin(theta)
        return out[:count]
