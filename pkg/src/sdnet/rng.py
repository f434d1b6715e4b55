"""Deterministic random streams.

Every stochastic routine in this package draws from its own Philox4x64
stream, a counter-based 64-bit generator whose output is reproducible
across platforms and numpy builds. Streams are keyed by one or more
nonnegative integers; the same key always yields the same draws.
"""

from __future__ import annotations

import numpy as np


def stream(*key: int) -> np.random.Generator:
    """Return an independent Philox stream for the given integer key."""
    parts = [int(k) for k in key]
    if not parts:
        raise ValueError("stream() needs at least one key component")
    if any(p < 0 for p in parts):
        raise ValueError("stream() key components must be nonnegative")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(parts)))


def derive(*key: int) -> int:
    """Mix key components into a single 64-bit seed (stable across runs)."""
    parts = [int(k) for k in key]
    if any(p < 0 for p in parts):
        raise ValueError("derive() key components must be nonnegative")
    return int(np.random.SeedSequence(parts).generate_state(1, np.uint64)[0])
