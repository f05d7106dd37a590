"""Deterministic random numbers for the synthetic-data generators.

Uniform variates come from SplitMix64, a counter-based 64-bit generator:
output ``k`` of stream ``seed`` is ``mix64(seed + (k + 1) * GOLDEN)`` with
all arithmetic modulo 2**64.  Gaussian variates are produced from
consecutive uniform pairs by the Box-Muller transform.  Both mappings are
pure functions of (seed, index), so identical seeds give bit-identical
streams regardless of chunking, platform, or process count.
"""

from __future__ import annotations

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_U53 = 2.0 ** -53


def _mix64(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def derive_seed(master_seed: int, index: int) -> int:
    """Per-run seed: ``master_seed + index`` modulo 2**64."""
    return (master_seed + index) % 2**64


def uniform_values(seed: int, count: int, start: int = 0) -> np.ndarray:
    """``count`` uniforms on [0, 1) from stream ``seed`` starting at ``start``."""
    if count < 0:
        raise ValueError("count must be nonnegative")
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        state = np.uint64(seed % 2**64) + idx * _GOLDEN
        bits = _mix64(state)
    return (bits >> np.uint64(11)).astype(np.float64) * _U53


def normal_values(seed: int, count: int) -> np.ndarray:
    """``count`` standard-normal variates from stream ``seed``.

    Uniform pairs (u[2i], u[2i+1]) map to the Box-Muller pair
    (r*cos, r*sin) with r = sqrt(-2*log(1 - u[2i])); outputs are
    interleaved in that order and truncated to ``count``.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    pairs = (count + 1) // 2
    u = uniform_values(seed, 2 * pairs)
    r = np.sqrt(-2.0 * np.log1p(-u[0::2]))
    theta = (2.0 * np.pi) * u[1::2]
    out = np.empty(2 * pairs)
    out[0::2] = r * np.cos(theta)
    out[1::2] = r * np.sin(theta)
    return out[:count]


def normal_matrix(seed: int, shape: tuple[int, ...]) -> np.ndarray:
    """Standard-normal array of ``shape``, filled in C (row-major) order."""
    n = int(np.prod(shape))
    return normal_values(seed, n).reshape(shape)
