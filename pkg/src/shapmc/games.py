"""Characteristic-function games: coalition model, built-in families, file I/O.

A game is a player count ``n`` plus a deterministic oracle mapping coalitions
to real values, normalized so the empty coalition is worth 0. Coalitions are
fixed-width bitmasks, which keeps hashing, enumeration and sampling cheap for
n up to 63. Built-in parametric families (weighted voting, additive,
symmetric, airport, explicit table) double as test beds and attach whatever
metadata is analytically known about them (exact values, variance/range
bounds, linear coalition bounds).
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Mapping

MAX_PLAYERS = 63          # bitmask coalitions fit a machine word
MAX_TABLE_PLAYERS = 20    # explicit tables hold 2^n entries


class InvalidCoalitionError(ValueError):
    """A coalition references players outside the owning game."""


class GameConstructionError(ValueError):
    """Family parameters do not describe a valid game."""


class UnsupportedFamilyError(ValueError):
    """The requested operation has no rule for this game family."""


@dataclass(frozen=True, slots=True)
class Coalition:
    """A subset of players, stored as a bitmask over indices [0, n).

    ``mask`` has bit i set iff player i is a member; ``n`` is the width of
    the owning game so membership can be validated at construction.
    """

    mask: int
    n: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_PLAYERS:
            raise InvalidCoalitionError(f"player count {self.n} outside [1, {MAX_PLAYERS}]")
        if not 0 <= self.mask < (1 << self.n):
            raise InvalidCoalitionError(f"mask {self.mask:#x} has members outside [0, {self.n})")

    @classmethod
    def empty(cls, n: int) -> "Coalition":
        return cls(0, n)

    @classmethod
    def full(cls, n: int) -> "Coalition":
        return cls((1 << n) - 1, n)

    @classmethod
    def from_members(cls, members: Iterable[int], n: int) -> "Coalition":
        mask = 0
        for i in members:
            if not 0 <= i < n:
                raise InvalidCoalitionError(f"player {i} outside [0, {n})")
            mask |= 1 << i
        return cls(mask, n)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if self.mask >> i & 1)

    def contains(self, i: int) -> bool:
        return bool(self.mask >> i & 1)

    def add(self, i: int) -> "Coalition":
        if not 0 <= i < self.n:
            raise InvalidCoalitionError(f"player {i} outside [0, {self.n})")
        return Coalition(self.mask | (1 << i), self.n)

    def __iter__(self):
        return iter(self.members)


@dataclass(frozen=True)
class LinearBounds:
    """Constants (a, b) with a|C| <= v(C) <= b|C| for every nonempty coalition.

    The derived width d = 2(b - a) caps the range of marginal contributions
    within the size-k stratum at d(k + 1).
    """

    a: float
    b: float

    def __post_init__(self):
        if self.a > self.b:
            raise ValueError(f"lower slope {self.a} exceeds upper slope {self.b}")

    @property
    def d(self) -> float:
        return 2.0 * (self.b - self.a)


@dataclass(frozen=True)
class KnownFacts:
    """Analytically known quantities attached to a game, all optional.

    variance_bound and range_bound are maxima over players of the variance /
    range of that player's marginal contributions; linear_bounds is the
    (a, b) pair above; exact_shapley is the full per-player solution.
    """

    variance_bound: float | None = None
    range_bound: float | None = None
    linear_bounds: LinearBounds | None = None
    exact_shapley: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.variance_bound is not None and self.variance_bound < 0:
            raise ValueError("variance bound must be >= 0")
        if self.range_bound is not None and self.range_bound < 0:
            raise ValueError("range bound must be >= 0")
        if self.exact_shapley is not None:
            object.__setattr__(self, "exact_shapley", tuple(float(x) for x in self.exact_shapley))


@dataclass(frozen=True)
class Game:
    """A cooperative game: player count, value oracle, optional known facts.

    The oracle must be pure (same coalition -> same value, no side effects)
    and safe to call concurrently. ``family``/``params`` are retained for the
    built-in families so closed-form rules and serialization can dispatch on
    them; hand-rolled games may leave them None. ``empty_shift`` records the
    constant subtracted by a constructor to restore v(empty) = 0.
    """

    n: int
    oracle: Callable[[Coalition], float]
    metadata: KnownFacts | None = None
    family: str | None = None
    params: dict = field(default_factory=dict)
    empty_shift: float = 0.0

    def __post_init__(self):
        if not 1 <= self.n <= MAX_PLAYERS:
            raise GameConstructionError(f"player count {self.n} outside [1, {MAX_PLAYERS}]")

    def grand_coalition(self) -> Coalition:
        return Coalition.full(self.n)


def value(game: Game, c: Coalition) -> float:
    """Evaluate the characteristic function v(C)."""
    if c.n != game.n or c.mask >> game.n:
        raise InvalidCoalitionError(
            f"coalition over {c.n} players does not belong to a {game.n}-player game"
        )
    return game.oracle(c)


def marginal_contribution(game: Game, c: Coalition, i: int) -> float:
    """Value player i adds by joining coalition C: v(C + i) - v(C)."""
    if c.contains(i):
        raise ValueError(f"player {i} already belongs to the coalition")
    return value(game, c.add(i)) - value(game, c)


def _require_nonnegative(values, what: str) -> tuple[float, ...]:
    out = tuple(float(x) for x in values)
    if len(out) == 0:
        raise GameConstructionError(f"{what} must be nonempty")
    if any(x < 0 for x in out):
        raise GameConstructionError(f"{what} must be nonnegative")
    return out


def make_weighted_voting(weights, quota: float) -> Game:
    """Voting game: a coalition wins (value 1) iff its weight sum >= quota.

    Ties count as winning: the ">= quota" convention. quota must be positive
    so the empty coalition loses and v(empty) = 0 holds.
    """
    w = _require_nonnegative(weights, "weights")
    quota = float(quota)
    if quota <= 0:
        raise GameConstructionError("quota must be > 0 so the empty coalition loses")
    n = len(w)

    def oracle(c: Coalition) -> float:
        total = 0.0
        mask = c.mask
        while mask:
            low = mask & -mask
            total += w[low.bit_length() - 1]
            mask ^= low
        return 1.0 if total >= quota else 0.0

    # 0/1 monotone game: marginal contributions live in [0, 1].
    facts = KnownFacts(range_bound=1.0)
    return Game(n, oracle, metadata=facts, family="weighted_voting",
                params={"weights": list(w), "quota": quota})


def make_additive(weights) -> Game:
    """Additive game v(C) = sum of member weights; the solution is the weights."""
    w = _require_nonnegative(weights, "weights")
    n = len(w)

    def oracle(c: Coalition) -> float:
        total = 0.0
        mask = c.mask
        while mask:
            low = mask & -mask
            total += w[low.bit_length() - 1]
            mask ^= low
        return total

    # Marginal contributions are the constant w_i, so variance and range
    # vanish and every nonempty coalition averages between min and max weight.
    facts = KnownFacts(
        variance_bound=0.0,
        range_bound=0.0,
        linear_bounds=LinearBounds(min(w), max(w)),
        exact_shapley=w,
    )
    return Game(n, oracle, metadata=facts, family="additive", params={"weights": list(w)})


def make_symmetric(size_values) -> Game:
    """Symmetric game v(C) = f(|C|) given the n+1 values f(0..n), f(0) = 0.

    All players are interchangeable, so each receives v(N)/n.
    """
    f = tuple(float(x) for x in size_values)
    if len(f) < 2:
        raise GameConstructionError("size_values needs at least f(0) and f(1)")
    if f[0] != 0.0:
        raise GameConstructionError("size_values[0] must be 0 (empty coalition)")
    n = len(f) - 1

    def oracle(c: Coalition) -> float:
        return f[c.mask.bit_count()]

    ratios = [f[k] / k for k in range(1, n + 1)]
    facts = KnownFacts(
        linear_bounds=LinearBounds(min(ratios), max(ratios)),
        exact_shapley=(f[n] / n,) * n,
    )
    return Game(n, oracle, metadata=facts, family="symmetric", params={"size_values": list(f)})


def make_airport(costs) -> Game:
    """Airport game v(C) = max cost among members (0 for the empty coalition)."""
    c_vec = _require_nonnegative(costs, "costs")
    n = len(c_vec)

    def oracle(c: Coalition) -> float:
        best = 0.0
        mask = c.mask
        while mask:
            low = mask & -mask
            cost = c_vec[low.bit_length() - 1]
            if cost > best:
                best = cost
            mask ^= low
        return best

    # min over sizes s of (s-th smallest cost)/s: the cheapest coalition of
    # size s takes the s cheapest players, and v(C)/|C| is max(C)/|C|.
    ordered = sorted(c_vec)
    a = min(ordered[s - 1] / s for s in range(1, n + 1))
    facts = KnownFacts(linear_bounds=LinearBounds(a, max(c_vec)))
    return Game(n, oracle, metadata=facts, family="airport", params={"costs": list(c_vec)})


def make_table_game(n: int, table: Mapping) -> Game:
    """Explicit game from a complete table of all 2^n coalition values.

    Keys may be bitmask integers or Coalition instances. If the table assigns
    the empty coalition a nonzero value, every entry is shifted by that
    constant to restore v(empty) = 0 and the shift is recorded on the game.
    """
    if not isinstance(n, int) or n < 1:
        raise GameConstructionError(f"player count must be a positive integer, got {n!r}")
    if n > MAX_TABLE_PLAYERS:
        raise GameConstructionError(f"explicit tables capped at {MAX_TABLE_PLAYERS} players")

    values = [None] * (1 << n)
    for key, val in table.items():
        mask = key.mask if isinstance(key, Coalition) else int(key)
        if not 0 <= mask < (1 << n):
            raise GameConstructionError(f"table key {mask:#x} outside a {n}-player game")
        values[mask] = float(val)
    missing = sum(v is None for v in values)
    if missing:
        raise GameConstructionError(f"table is incomplete: {missing} of {1 << n} coalitions missing")

    shift = values[0]
    if shift != 0.0:
        values = [v - shift for v in values]

    def oracle(c: Coalition) -> float:
        return values[c.mask]

    return Game(n, oracle, family="table", params={"values": values}, empty_shift=shift)


_FAMILY_BUILDERS = {
    "weighted_voting": lambda n, p: make_weighted_voting(p["weights"], p["quota"]),
    "additive": lambda n, p: make_additive(p["weights"]),
    "symmetric": lambda n, p: make_symmetric(p["size_values"]),
    "airport": lambda n, p: make_airport(p["costs"]),
    "table": lambda n, p: make_table_game(
        n, {int(e["mask"]): float(e["value"]) for e in p["entries"]}
    ),
}


def game_from_spec(spec: Mapping) -> Game:
    """Build a game from its JSON-compatible description.

    The format is ``{"family": ..., "n": int, "params": {...}}`` where table
    params list entries as ``{"mask": int, "value": real}``.
    """
    try:
        family = spec["family"]
        n = int(spec["n"])
        params = spec.get("params", {})
    except (KeyError, TypeError, ValueError) as exc:
        raise GameConstructionError(f"malformed game description: {exc}") from exc
    builder = _FAMILY_BUILDERS.get(family)
    if builder is None:
        raise UnsupportedFamilyError(
            f"unknown family {family!r}; expected one of {sorted(_FAMILY_BUILDERS)}"
        )
    game = builder(n, params)
    if game.n != n:
        raise GameConstructionError(
            f"declared n={n} but params describe {game.n} players"
        )
    return game


def game_to_spec(game: Game) -> dict:
    """Inverse of game_from_spec for games built from a named family."""
    if game.family is None:
        raise UnsupportedFamilyError("game was not built from a named family")
    if game.family == "table":
        entries = [{"mask": m, "value": v} for m, v in enumerate(game.params["values"])]
        return {"family": "table", "n": game.n, "params": {"entries": entries}}
    return {"family": game.family, "n": game.n, "params": dict(game.params)}


def load_game(path) -> Game:
    """Read a game description file (JSON) and build the game."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            spec = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GameConstructionError(f"game file {path} is not valid JSON: {exc}") from exc
    return game_from_spec(spec)


class CallCounter:
    """Thread-safe oracle call counter, for oracle-budget accounting."""

    def __init__(self):
        self._lock = threading.Lock()
        self.calls = 0

    def bump(self):
        with self._lock:
            self.calls += 1


def instrumented(game: Game) -> tuple[Game, CallCounter]:
    """Wrap a game so every oracle evaluation increments a counter."""
    counter = CallCounter()
    inner = game.oracle

    def oracle(c: Coalition) -> float:
        counter.bump()
        return inner(c)

    return replace(game, oracle=oracle), counter
