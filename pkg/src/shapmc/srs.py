"""Simple random sampling over joining orders, with non-asymptotic guarantees.

One uniformly drawn permutation yields a marginal-contribution sample for
every player at once, so a budget of m permutations estimates the whole
value vector with m samples per player and m(n+1) oracle calls in total.
Sample sizes and error radii come from Chebyshev's inequality (variance
known) or Hoeffding's inequality (range known); both hold for any finite m,
unlike the normal-theory interval, which is provided only as a baseline and
carries no finite-sample guarantee.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtri

from .games import Coalition, Game, value
from .rng import stream

CHEBYSHEV = "chebyshev"
HOEFFDING = "hoeffding"
CLT_BASELINE = "clt-baseline"
STRATIFIED = "stratified"


@dataclass(frozen=True)
class ErrorBound:
    """A probabilistic accuracy claim: Pr(|estimate - truth| >= epsilon) <= delta.

    ``method`` names the inequality the claim rests on and ``inputs`` records
    the quantities (variance, range, linear-bound width, confidence split)
    it was computed from. The clt-baseline method carries no finite-sample
    guarantee; it exists so the guarantee-free interval can be compared
    against the ones above.
    """

    epsilon: float
    delta: float
    method: str
    inputs: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Estimate:
    """Sampled Shapley values for all players of a game.

    Each entry of ``per_player`` is the arithmetic mean of exactly
    ``samples_used`` marginal contributions drawn from the permutation
    stream seeded with ``seed``.
    """

    per_player: np.ndarray
    samples_used: int
    seed: int
    bound: ErrorBound | None = None


def random_permutation(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform random joining order of n players, drawn from ``rng``."""
    if n < 1:
        raise ValueError("need at least one player")
    return rng.permutation(n)


def _check_confidence(epsilon: float | None, delta: float):
    if epsilon is not None and not epsilon > 0:
        raise ValueError(f"epsilon must be > 0, got {epsilon}")
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")


def chebyshev_sample_size(sigma2: float, epsilon: float, delta: float) -> int:
    """Samples needed for Pr(|error| >= epsilon) <= delta given variance sigma2.

    ceil(sigma2 / (delta * epsilon^2)), floored at one sample: a zero-variance
    player still needs a single draw to produce a number, and one draw is
    already exact in that degenerate case.
    """
    _check_confidence(epsilon, delta)
    if sigma2 < 0:
        raise ValueError(f"variance must be >= 0, got {sigma2}")
    return max(1, math.ceil(sigma2 / (delta * epsilon * epsilon)))


def hoeffding_sample_size(r: float, epsilon: float, delta: float) -> int:
    """Samples needed for the same guarantee given the contribution range r."""
    _check_confidence(epsilon, delta)
    if r < 0:
        raise ValueError(f"range must be >= 0, got {r}")
    return max(1, math.ceil(math.log(2.0 / delta) * r * r / (2.0 * epsilon * epsilon)))


def chebyshev_error_bound(sigma2: float, m: int, delta: float) -> float:
    """Error radius guaranteed with probability 1 - delta after m samples."""
    _check_confidence(None, delta)
    if sigma2 < 0:
        raise ValueError(f"variance must be >= 0, got {sigma2}")
    if m < 1:
        raise ValueError(f"sample count must be >= 1, got {m}")
    return math.sqrt(sigma2 / (m * delta))


def hoeffding_error_bound(r: float, m: int, delta: float) -> float:
    """Range-based error radius guaranteed with probability 1 - delta."""
    _check_confidence(None, delta)
    if r < 0:
        raise ValueError(f"range must be >= 0, got {r}")
    if m < 1:
        raise ValueError(f"sample count must be >= 1, got {m}")
    return r * math.sqrt(math.log(2.0 / delta) / (2.0 * m))


def estimate_srs(game: Game, m: int, seed: int) -> Estimate:
    """Estimate all players' Shapley values from m random joining orders.

    Every permutation is scanned left to right with a single running
    coalition value, so each of its n prefixes is evaluated once and the
    whole run costs exactly m(n+1) oracle calls. Identical (game, m, seed)
    reproduce the estimate bit for bit.
    """
    if m < 1:
        raise ValueError(f"sample count must be >= 1, got {m}")
    n = game.n
    gen = stream(seed)
    acc = np.zeros(n)
    for _ in range(m):
        order = gen.permutation(n)
        mask = 0
        prev = value(game, Coalition.empty(n))
        for raw in order:
            i = int(raw)
            mask |= 1 << i
            cur = value(game, Coalition(mask, n))
            acc[i] += cur - prev
            prev = cur
    return Estimate(per_player=acc / m, samples_used=m, seed=int(seed))


def collect_marginal_samples(game: Game, i: int, m: int, seed: int) -> np.ndarray:
    """The m raw marginal contributions of player i behind estimate_srs.

    Draws from the same permutation stream as estimate_srs with the same
    seed, so the sample mean reproduces that estimate's entry for i. Used by
    experiments that need the empirical distribution, e.g. the normal-theory
    interval.
    """
    if not 0 <= i < game.n:
        raise ValueError(f"player {i} outside [0, {game.n})")
    if m < 1:
        raise ValueError(f"sample count must be >= 1, got {m}")
    n = game.n
    gen = stream(seed)
    out = np.empty(m)
    for t in range(m):
        order = gen.permutation(n)
        mask = 0
        prev = value(game, Coalition.empty(n))
        for raw in order:
            j = int(raw)
            mask |= 1 << j
            cur = value(game, Coalition(mask, n))
            if j == i:
                out[t] = cur - prev
            prev = cur
    return out


def clt_interval_halfwidth(samples, delta: float) -> float:
    """Half-width of the normal-theory interval z * s / sqrt(m).

    s is the sample standard deviation (m - 1 divisor) and z the standard
    normal quantile at 1 - delta/2. This is the guarantee-free baseline: its
    nominal coverage relies on the sample mean already being normal, which
    no finite m ensures.
    """
    _check_confidence(None, delta)
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 1 or arr.size < 2:
        raise ValueError("need at least two samples to estimate a standard deviation")
    z = float(ndtri(1.0 - delta / 2.0))
    s = float(np.std(arr, ddof=1))
    return z * s / math.sqrt(arr.size)
