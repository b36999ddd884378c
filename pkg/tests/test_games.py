"""Game model: coalitions, built-in families, serialization, oracle contracts."""

import json
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest
from conftest import majority_game, random_table_game

from shapmc import (
    Coalition,
    GameConstructionError,
    InvalidCoalitionError,
    UnsupportedFamilyError,
    game_from_spec,
    game_to_spec,
    instrumented,
    load_game,
    make_additive,
    make_airport,
    make_symmetric,
    make_table_game,
    make_weighted_voting,
    marginal_contribution,
    value,
)


def test_coalition_construction():
    c = Coalition.from_members([0, 2], 3)
    assert c.mask == 0b101
    assert c.size == 2
    assert c.members == (0, 2)
    assert c.contains(2) and not c.contains(1)
    assert list(c) == [0, 2]
    assert Coalition.empty(3).size == 0
    assert Coalition.full(3).mask == 0b111


def test_coalition_add():
    c = Coalition.empty(4).add(1).add(3)
    assert c.members == (1, 3)
    with pytest.raises(InvalidCoalitionError):
        c.add(4)


def test_coalition_rejects_out_of_range_members():
    with pytest.raises(InvalidCoalitionError):
        Coalition.from_members([3], 3)
    with pytest.raises(InvalidCoalitionError):
        Coalition(0b1000, 3)
    with pytest.raises(InvalidCoalitionError):
        Coalition(0, 0)


def test_value_additive():
    g = make_additive((1, 2, 3))
    assert value(g, Coalition.from_members([0, 2], 3)) == 4.0
    assert value(g, Coalition.empty(3)) == 0.0


def test_value_weighted_voting_ties_win():
    g = make_weighted_voting((3, 2, 1), 4)
    assert value(g, Coalition.from_members([0, 1], 3)) == 1.0
    # weight sum exactly equal to the quota still wins
    assert value(g, Coalition.from_members([0, 2], 3)) == 1.0
    assert value(g, Coalition.from_members([1, 2], 3)) == 0.0


def test_value_rejects_foreign_coalition():
    g = make_additive((1, 2, 3))
    with pytest.raises(InvalidCoalitionError):
        value(g, Coalition.empty(4))


def test_marginal_contribution():
    g = make_additive((1, 2, 3))
    assert marginal_contribution(g, Coalition.from_members([1], 3), 2) == 3.0
    maj = majority_game()
    assert marginal_contribution(maj, Coalition.from_members([1], 3), 0) == 1.0
    assert marginal_contribution(maj, Coalition.empty(3), 0) == 0.0


def test_marginal_contribution_rejects_member():
    g = make_additive((1, 2, 3))
    with pytest.raises(ValueError):
        marginal_contribution(g, Coalition.from_members([1], 3), 1)


def test_empty_coalition_is_worthless_for_every_family():
    rng = np.random.default_rng(7)
    for _ in range(20):
        n = int(rng.integers(2, 8))
        games = [
            make_weighted_voting(rng.uniform(0, 5, n), float(rng.uniform(0.5, 3))),
            make_additive(rng.uniform(0, 5, n)),
            make_symmetric([0.0] + list(rng.uniform(-2, 2, n))),
            make_airport(rng.uniform(0, 5, n)),
            random_table_game(rng, n),
        ]
        for g in games:
            assert value(g, Coalition.empty(n)) == 0.0


def test_additive_marginals_are_the_weights():
    rng = np.random.default_rng(11)
    w = rng.uniform(0, 3, 10)
    g = make_additive(w)
    for i in range(10):
        for sub in range(1 << 9):
            mask = ((sub >> i) << (i + 1)) | (sub & ((1 << i) - 1))
            c = Coalition(mask, 10)
            assert marginal_contribution(g, c, i) == pytest.approx(w[i], abs=1e-12)


def test_symmetric_value_depends_only_on_size():
    rng = np.random.default_rng(13)
    f = [0.0] + list(rng.uniform(-1, 1, 10))
    g = make_symmetric(f)
    for mask in range(1 << 10):
        assert value(g, Coalition(mask, 10)) == f[mask.bit_count()]


def test_airport_value_is_monotone():
    rng = np.random.default_rng(17)
    g = make_airport(rng.uniform(0, 4, 8))
    # every (C, C') pair with C a strict subset of C'
    for mask in range(1 << 8):
        v = value(g, Coalition(mask, 8))
        sup = mask
        while True:
            sup = (sup + 1) | mask
            if sup >= (1 << 8):
                break
            assert value(g, Coalition(sup, 8)) >= v


def test_table_round_trip_is_bit_exact():
    rng = np.random.default_rng(19)
    vals = rng.uniform(-1, 1, 1 << 6)
    vals[0] = 0.0
    g = make_table_game(6, dict(enumerate(vals)))
    for mask in range(1 << 6):
        assert value(g, Coalition(mask, 6)) == vals[mask]


def test_table_normalizes_nonzero_empty_value():
    g = make_table_game(2, {0: 5.0, 1: 6.0, 2: 7.0, 3: 9.0})
    assert g.empty_shift == 5.0
    assert value(g, Coalition.empty(2)) == 0.0
    assert value(g, Coalition.from_members([0], 2)) == 1.0
    assert value(g, Coalition.full(2)) == 4.0


def test_table_construction_errors():
    with pytest.raises(GameConstructionError):
        make_table_game(2, {0: 0.0, 1: 1.0})  # incomplete
    with pytest.raises(GameConstructionError):
        make_table_game(-1, {})
    with pytest.raises(GameConstructionError):
        make_table_game(2, {0: 0.0, 1: 1.0, 2: 1.0, 4: 1.0})  # key out of range
    with pytest.raises(GameConstructionError):
        make_table_game(21, {})  # above the table cap


def test_constructor_validation():
    with pytest.raises(GameConstructionError):
        make_weighted_voting((1, 2), 0.0)  # empty coalition would win
    with pytest.raises(GameConstructionError):
        make_additive((-1, 2))
    with pytest.raises(GameConstructionError):
        make_symmetric((1.0, 2.0))  # f(0) != 0
    with pytest.raises(GameConstructionError):
        make_airport(())


def test_family_metadata():
    add = make_additive((1, 2, 3))
    assert add.metadata.exact_shapley == (1.0, 2.0, 3.0)
    assert add.metadata.variance_bound == 0.0
    assert add.metadata.range_bound == 0.0

    sym = make_symmetric((0, 0, 1, 1))
    assert sym.metadata.exact_shapley == pytest.approx((1 / 3, 1 / 3, 1 / 3))

    # the efficiency identity holds for every attached solution
    for g in (add, sym):
        total = sum(g.metadata.exact_shapley)
        assert total == pytest.approx(value(g, Coalition.full(g.n)), abs=1e-9)

    wv = make_weighted_voting((3, 2, 1), 4)
    assert wv.metadata.range_bound == 1.0


@pytest.mark.parametrize("spec", [
    {"family": "weighted_voting", "n": 3, "params": {"weights": [3, 2, 1], "quota": 4}},
    {"family": "additive", "n": 3, "params": {"weights": [1, 2, 3]}},
    {"family": "symmetric", "n": 3, "params": {"size_values": [0, 0, 1, 1]}},
    {"family": "airport", "n": 3, "params": {"costs": [1, 1, 4]}},
    {"family": "table", "n": 2, "params": {"entries": [
        {"mask": 0, "value": 0.0}, {"mask": 1, "value": 1.0},
        {"mask": 2, "value": 2.0}, {"mask": 3, "value": 4.0}]}},
])
def test_game_spec_round_trip(spec):
    g = game_from_spec(spec)
    assert g.n == spec["n"]
    g2 = game_from_spec(game_to_spec(g))
    for mask in range(1 << g.n):
        c = Coalition(mask, g.n)
        assert value(g2, c) == value(g, c)


def test_game_spec_errors():
    with pytest.raises(UnsupportedFamilyError):
        game_from_spec({"family": "nope", "n": 2, "params": {}})
    with pytest.raises(GameConstructionError):
        game_from_spec({"family": "additive"})
    with pytest.raises(GameConstructionError):
        game_from_spec({"family": "additive", "n": 4, "params": {"weights": [1, 2]}})


def test_load_game(tmp_path):
    path = tmp_path / "game.json"
    path.write_text(json.dumps(
        {"family": "weighted_voting", "n": 3, "params": {"weights": [3, 2, 1], "quota": 4}}
    ))
    g = load_game(path)
    assert g.family == "weighted_voting"
    assert value(g, Coalition.from_members([0], 3)) == 0.0

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(GameConstructionError):
        load_game(bad)


def test_oracles_are_safe_under_concurrent_use():
    rng = np.random.default_rng(23)
    g = random_table_game(rng, 8)
    coalitions = [Coalition(int(m), 8) for m in rng.integers(0, 1 << 8, 500)]
    expected = [value(g, c) for c in coalitions]
    with ThreadPoolExecutor(max_workers=8) as pool:
        got = list(pool.map(lambda c: value(g, c), coalitions))
    assert got == expected


def test_instrumented_counts_oracle_calls():
    g, counter = instrumented(make_additive((1, 2)))
    value(g, Coalition.empty(2))
    value(g, Coalition.full(2))
    marginal_contribution(g, Coalition.empty(2), 0)
    assert counter.calls == 4
