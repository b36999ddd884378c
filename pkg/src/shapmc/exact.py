"""Brute-force ground truth: exact Shapley values, stratum statistics, linear bounds.

Everything here enumerates coalitions or permutations outright, so it only
works for small player counts, but within those caps it is the oracle the
samplers are judged against. Two independent formulations of the exact value
are provided (coalition-weighted and permutation-averaged) so each can check
the other.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .games import Coalition, Game, LinearBounds, UnsupportedFamilyError, value

MAX_ENUM_PLAYERS = 25   # 2^n coalition enumerations
MAX_PERM_PLAYERS = 10   # n! permutation enumerations


class FeasibilityError(ValueError):
    """The game is too large for exhaustive enumeration."""


@dataclass(frozen=True)
class StratumStats:
    """Exact statistics of one player's marginal contributions at one size.

    Stratum k holds the C(n-1, k) coalitions of size k avoiding the player;
    ``mean`` is the expected marginal contribution there and ``range`` the
    exact max minus min.
    """

    k: int
    mean: float
    range: float
    count: int


def _check_enum_cap(n: int):
    if n > MAX_ENUM_PLAYERS:
        raise FeasibilityError(
            f"coalition enumeration needs 2^{n} oracle calls; capped at n={MAX_ENUM_PLAYERS}"
        )


def _check_player(game: Game, i: int):
    if not 0 <= i < game.n:
        raise ValueError(f"player {i} outside [0, {game.n})")


def _insert_zero_bit(sub: int, i: int) -> int:
    # Widen an (n-1)-bit mask to n bits with a 0 at position i; order-preserving.
    return ((sub >> i) << (i + 1)) | (sub & ((1 << i) - 1))


def shapley_exact_coalitions(game: Game, i: int) -> float:
    """Exact Shapley value of player i by summing over coalitions.

    Each coalition C avoiding i contributes its marginal contribution with
    weight |C|!(n-|C|-1)!/n!, accumulated here per coalition size and folded
    in as 1/(n * C(n-1, k)): the same weight without ever forming a
    factorial, which keeps n = 25 inside double precision.
    """
    _check_player(game, i)
    _check_enum_cap(game.n)
    n = game.n
    size_sums = [0.0] * n
    bit = 1 << i
    for sub in range(1 << (n - 1)):
        mask = _insert_zero_bit(sub, i)
        without = value(game, Coalition(mask, n))
        with_i = value(game, Coalition(mask | bit, n))
        size_sums[mask.bit_count()] += with_i - without
    total = 0.0
    for k in range(n):
        total += size_sums[k] / (n * math.comb(n - 1, k))
    return total


def shapley_exact_permutations_all(game: Game) -> np.ndarray:
    """Exact Shapley values of all players by averaging over joining orders.

    Walks every permutation left to right with one running coalition value,
    crediting each player the jump it causes. n! blows up fast; capped at
    n = 10.
    """
    n = game.n
    if n > MAX_PERM_PLAYERS:
        raise FeasibilityError(
            f"permutation enumeration needs {n}! sweeps; capped at n={MAX_PERM_PLAYERS}"
        )
    acc = np.zeros(n)
    empty_value = value(game, Coalition.empty(n))
    for order in itertools.permutations(range(n)):
        prev = empty_value
        mask = 0
        for i in order:
            mask |= 1 << i
            cur = value(game, Coalition(mask, n))
            acc[i] += cur - prev
            prev = cur
    return acc / math.factorial(n)


def shapley_exact_permutations(game: Game, i: int) -> float:
    """Permutation-formulation exact value of a single player."""
    _check_player(game, i)
    return float(shapley_exact_permutations_all(game)[i])


def shapley_exact(game: Game) -> np.ndarray:
    """Exact Shapley values of all players (coalition formulation)."""
    return np.array([shapley_exact_coalitions(game, i) for i in range(game.n)])


def stratum_mean_exact(game: Game, i: int, k: int) -> StratumStats:
    """Exact mean and range of player i's marginal contributions at size k."""
    _check_player(game, i)
    if not 0 <= k <= game.n - 1:
        raise ValueError(f"stratum index {k} outside [0, {game.n - 1}]")
    _check_enum_cap(game.n)
    n = game.n
    others = [p for p in range(n) if p != i]
    bit = 1 << i
    total = 0.0
    lo = math.inf
    hi = -math.inf
    count = 0
    for combo in itertools.combinations(others, k):
        mask = 0
        for p in combo:
            mask |= 1 << p
        mc = value(game, Coalition(mask | bit, n)) - value(game, Coalition(mask, n))
        total += mc
        lo = min(lo, mc)
        hi = max(hi, mc)
        count += 1
    return StratumStats(k=k, mean=total / count, range=hi - lo, count=count)


def marginal_range_exact(game: Game, i: int) -> float:
    """Exact global range of player i's marginal contributions."""
    _check_player(game, i)
    _check_enum_cap(game.n)
    n = game.n
    bit = 1 << i
    lo = math.inf
    hi = -math.inf
    for sub in range(1 << (n - 1)):
        mask = _insert_zero_bit(sub, i)
        mc = value(game, Coalition(mask | bit, n)) - value(game, Coalition(mask, n))
        lo = min(lo, mc)
        hi = max(hi, mc)
    return hi - lo


def marginal_variance_exact(game: Game, i: int) -> float:
    """Exact variance of player i's marginal contribution under random joining.

    A uniformly random permutation puts a uniformly random size on the
    predecessor set and a uniform coalition within that size, so coalition C
    carries probability 1/(n * C(n-1, |C|)).
    """
    _check_player(game, i)
    _check_enum_cap(game.n)
    n = game.n
    bit = 1 << i
    sums = [0.0] * n
    sq_sums = [0.0] * n
    for sub in range(1 << (n - 1)):
        mask = _insert_zero_bit(sub, i)
        mc = value(game, Coalition(mask | bit, n)) - value(game, Coalition(mask, n))
        k = mask.bit_count()
        sums[k] += mc
        sq_sums[k] += mc * mc
    mean = 0.0
    second = 0.0
    for k in range(n):
        w = 1.0 / (n * math.comb(n - 1, k))
        mean += w * sums[k]
        second += w * sq_sums[k]
    return max(second - mean * mean, 0.0)


def linear_bounds_exact(game: Game) -> LinearBounds:
    """Tightest (a, b) with a|C| <= v(C) <= b|C|, by exhaustive enumeration.

    The empty coalition is excluded: v(empty)/0 is undefined and v(empty) = 0
    holds by normalization anyway.
    """
    _check_enum_cap(game.n)
    n = game.n
    a = math.inf
    b = -math.inf
    for mask in range(1, 1 << n):
        ratio = value(game, Coalition(mask, n)) / mask.bit_count()
        a = min(a, ratio)
        b = max(b, ratio)
    return LinearBounds(a, b)


def linear_bounds_closed_form(game: Game) -> LinearBounds:
    """Family-specific (a, b) without enumeration, for games too big to scan.

    Supported families: additive (min/max weight), symmetric (extremes of
    f(k)/k over k >= 1), airport (cheapest average coalition vs. the single
    most expensive player).
    """
    if game.family == "additive":
        w = game.params["weights"]
        return LinearBounds(min(w), max(w))
    if game.family == "symmetric":
        f = game.params["size_values"]
        ratios = [f[k] / k for k in range(1, len(f))]
        return LinearBounds(min(ratios), max(ratios))
    if game.family == "airport":
        costs = sorted(game.params["costs"])
        a = min(costs[s - 1] / s for s in range(1, len(costs) + 1))
        return LinearBounds(a, costs[-1])
    raise UnsupportedFamilyError(
        f"no closed-form linear bounds for family {game.family!r}"
    )
