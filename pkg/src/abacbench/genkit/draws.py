"""Shared draw helpers for the dataset generators.

Everything routes through SplitMix64 integer draws; no floats, so streams
are identical across platforms.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from ..prng import SplitMix64


@lru_cache(maxsize=None)
def load_model(filename: str) -> dict:
    """Load a generator distribution file bundled under genkit/data/."""
    path = resources.files("abacbench.genkit").joinpath("data").joinpath(filename)
    return json.loads(path.read_text(encoding="utf-8"))


def weighted(rng: SplitMix64, values, weights):
    """One value drawn proportionally to integer weights (cycled if short)."""
    if len(weights) < len(values):
        weights = [weights[i % len(weights)] for i in range(len(values))]
    return values[rng.weighted_index(weights[: len(values)])]


def percent(rng: SplitMix64, pct: int) -> bool:
    """True with probability pct/100."""
    return rng.below(100) < pct


def subset(rng: SplitMix64, pool, lo: int, hi: int) -> frozenset:
    """Uniform-size subset of pool with lo..hi elements (clipped to pool)."""
    if not pool:
        return frozenset()
    k = lo if hi <= lo else lo + rng.below(hi - lo + 1)
    k = max(0, min(k, len(pool)))
    if k == 0:
        return frozenset()
    return frozenset(pool[i] for i in rng.sample_indices(len(pool), k))
