"""Seedable random streams for reproducible initial data.

The only generator offered is splitmix64, chosen because it is trivial to
reimplement bit-exactly in any language.  Draw i is produced by advancing
the state i + 1 times from the seed and mixing; the whole stream is
therefore a pure function of (seed, i) and can be generated vectorised.
"""

from __future__ import annotations

import numpy as np

from .errors import ConfigurationError

__all__ = ["splitmix64_uint64", "splitmix64_doubles", "uniform_values", "GENERATORS"]

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def splitmix64_uint64(seed: int, n: int) -> np.ndarray:
    """First n 64-bit outputs of splitmix64 seeded with `seed`."""
    counters = np.arange(1, n + 1, dtype=np.uint64)
    z = np.uint64(seed & 0xFFFFFFFFFFFFFFFF) + counters * _GAMMA
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def splitmix64_doubles(seed: int, n: int) -> np.ndarray:
    """Doubles in [0, 1) built from the top 53 bits of each output."""
    bits = splitmix64_uint64(seed, n) >> np.uint64(11)
    return bits.astype(np.float64) * 2.0**-53


GENERATORS = {"splitmix64": splitmix64_doubles}


def uniform_values(generator: str, seed: int, n: int, lo: float, hi: float) -> np.ndarray:
    """n uniform draws in [lo, hi) from a named generator."""
    try:
        draw = GENERATORS[generator]
    except KeyError:
        raise ConfigurationError(
            f"unknown rng {generator!r}; known generators: {sorted(GENERATORS)}"
        ) from None
    return lo + draw(seed, n) * (hi - lo)
