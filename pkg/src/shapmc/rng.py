"""Reproducible random streams for the samplers.

All randomness in the package flows through Philox, a counter-based bit
generator whose output is fixed by numpy's stream-compatibility policy, so
results are bit-reproducible across platforms and across runs. Independent
substreams are derived from an integer seed plus a tuple path (for example
(player, stratum) or (trial,)) via numpy's SeedSequence spawn keys, which
makes parallel chunks draw disjoint streams no matter how they are scheduled.
"""

from __future__ import annotations

import numpy as np


def stream(seed: int, *path: int) -> np.random.Generator:
    """Generator for the substream identified by ``seed`` and an index path.

    The same (seed, path) always yields an identical stream; distinct paths
    yield statistically independent ones.
    """
    seq = np.random.SeedSequence(int(seed), spawn_key=tuple(int(p) for p in path))
    return np.random.Generator(np.random.Philox(seq))
