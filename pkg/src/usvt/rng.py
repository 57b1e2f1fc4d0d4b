"""Portable seeded randomness.

Every stochastic routine takes an explicit 64-bit integer seed and turns it
into a ``numpy.random.Generator`` through :func:`make_rng`, which uses the
counter-based Philox 4x64 bit generator. A (seed, parameters) pair therefore
pins down the output bit for bit on any platform with IEEE-754 doubles and
the same numpy sampling algorithms.

Independent child seeds for grid cells, trials and internal streams are
derived with :func:`mix_seed`, a SplitMix64 chain over the index path, so
work units can run in parallel without sharing generator state.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    # SplitMix64 finalizer.
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & MASK64
    return z ^ (z >> 31)


def mix_seed(seed: int, *path: int) -> int:
    """Derive a 64-bit child seed from ``seed`` and an index path.

    Each step advances the state by the SplitMix64 increment, folds in the
    next path component by XOR and applies the SplitMix64 finalizer.
    Distinct paths of the same length give statistically independent seeds,
    and the whole derivation is plain integer arithmetic, reproducible in
    any language.
    """
    x = int(seed) & MASK64
    for step in path:
        x = (x + _GAMMA) & MASK64
        x = _mix64(x ^ (int(step) & MASK64))
    return x


def make_rng(seed: int) -> np.random.Generator:
    """Generator backed by the Philox 4x64 counter-based bit stream."""
    return np.random.Generator(np.random.Philox(key=int(seed) & MASK64))
