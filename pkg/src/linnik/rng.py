"""Counter-based deterministic pseudo-randomness (SplitMix64).

Every stochastic experiment in the package draws from this generator so
that runs are reproducible bit-for-bit from a seed, independent of which
kernel backend (compiled or pure) executes them, and so that draws can
be indexed by (seed, stream, counter) without shared state.
"""

import math

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix(z):
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def stream_key(seed, stream):
    """Derive the 64-bit key of an indexed substream."""
    return _mix((seed + (stream + 1) * _GAMMA) & _MASK)


def draw(key, counter):
    """The counter-th 64-bit output of the stream with the given key."""
    return _mix((key + (counter + 1) * _GAMMA) & _MASK)


def uniform(key, counter):
    """Uniform float in [0, 1) with 53 random bits."""
    return (draw(key, counter) >> 11) * (2.0**-53)


def unit_vector(key, counter):
    """Deterministic uniform point on the unit sphere.

    Three standard normals via Box-Muller (four uniform draws per
    vector, counters ``4*counter .. 4*counter+3``), normalized.
    """
    base = 4 * counter
    u1 = uniform(key, base) or 2.0**-53
    u2 = uniform(key, base + 1)
    u3 = uniform(key, base + 2) or 2.0**-53
    u4 = uniform(key, base + 3)
    r1 = math.sqrt(-2.0 * math.log(u1))
    r2 = math.sqrt(-2.0 * math.log(u3))
    g = (
        r1 * math.cos(2.0 * math.pi * u2),
        r1 * math.sin(2.0 * math.pi * u2),
        r2 * math.cos(2.0 * math.pi * u4),
    )
    norm = math.sqrt(g[0] ** 2 + g[1] ** 2 + g[2] ** 2)
    return (g[0] / norm, g[1] / norm, g[2] / norm)
