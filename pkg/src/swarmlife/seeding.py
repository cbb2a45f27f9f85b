"""Deterministic seed plumbing for Monte Carlo trials."""

from __future__ import annotations

import numpy as np


def derive_seed(*parts: int) -> int:
    """Fold integer parts into one stable 64-bit trial seed.

    Built on numpy's SeedSequence hashing, so the mapping is fixed across
    runs, platforms, and processes (unlike Python's salted ``hash``).
    """
    state = np.random.SeedSequence([int(p) & 0xFFFFFFFFFFFFFFFF for p in parts])
    return int(state.generate_state(1, np.uint64)[0])


def as_rng(seed: int | np.random.Generator | None) -> np.random.Generator:
    """Pass generators through; anything else seeds a fresh PCG64 stream."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)
