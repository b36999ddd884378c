"""Build games from the built-in families and compute exact Shapley values.

A game is just a player count plus an oracle mapping coalitions to values.
For small games the exact Shapley value is computable by enumeration, in two
independent ways, and the classic axioms can be checked numerically.
"""

import numpy as np

from shapmc import (
    Coalition,
    make_airport,
    make_table_game,
    make_weighted_voting,
    shapley_exact,
    shapley_exact_permutations_all,
    value,
)


def main():
    print("=== weighted voting: seats (3, 2, 1), quota 4 ===")
    wv = make_weighted_voting((3, 2, 1), 4)
    print("coalition {0}:", value(wv, Coalition.from_members([0], 3)), "(3 seats < 4: loses)")
    print("coalition {0,2}:", value(wv, Coalition.from_members([0, 2], 3)), "(4 seats = quota: wins)")
    phi = shapley_exact(wv)
    print("power split:", phi)
    print("-> the 2-seat and 1-seat parties are interchangeable; the 3-seat party")
    print("   pivots in 4 of the 6 joining orders, hence 2/3 vs 1/6 and 1/6.\n")

    print("=== airport: runway users with costs 1..5 ===")
    air = make_airport((1, 2, 3, 4, 5))
    phi = shapley_exact(air)
    print("cost shares:", phi)
    print("sum of shares:", phi.sum(), "= cost of the longest runway (efficiency)\n")

    print("=== the two exact formulations agree ===")
    rng = np.random.default_rng(0)
    vals = rng.uniform(-1, 1, 2 ** 5)
    vals[0] = 0.0
    g = make_table_game(5, dict(enumerate(vals)))
    by_coalitions = shapley_exact(g)
    by_permutations = shapley_exact_permutations_all(g)
    print("coalition-weighted:", by_coalitions)
    print("permutation-averaged:", by_permutations)
    print("max difference:", np.max(np.abs(by_coalitions - by_permutations)))

    print("\n=== axioms on the random game ===")
    grand = value(g, Coalition.full(5))
    print(f"efficiency: sum(phi) = {by_coalitions.sum():.12f}, v(N) = {grand:.12f}")
    doubled = make_table_game(5, {m: 2 * vals[m] for m in range(2 ** 5)})
    print("additivity: phi of the doubled game equals 2*phi ->",
          np.allclose(shapley_exact(doubled), 2 * by_coalitions, atol=1e-12))


if __name__ == "__main__":
    main()
