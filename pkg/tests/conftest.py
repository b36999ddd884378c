"""Shared game builders for the test suite."""

import numpy as np

from shapmc import make_table_game


def majority_game(n=3, threshold=2):
    """0/1 game worth 1 exactly when at least ``threshold`` players join."""
    table = {mask: (1.0 if mask.bit_count() >= threshold else 0.0) for mask in range(1 << n)}
    return make_table_game(n, table)


def unanimity_game(n):
    """0/1 game worth 1 only for the grand coalition."""
    full = (1 << n) - 1
    return make_table_game(n, {mask: (1.0 if mask == full else 0.0) for mask in range(1 << n)})


def random_table_game(rng: np.random.Generator, n: int, lo=-1.0, hi=1.0):
    """Arbitrary game with uniform values and a zero empty coalition."""
    vals = rng.uniform(lo, hi, size=1 << n)
    vals[0] = 0.0
    return make_table_game(n, dict(enumerate(vals)))
