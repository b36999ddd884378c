"""Command-line front end over the experiment harness.

Subcommands: exact, estimate-srs, estimate-stratified, bounds, coverage,
compare, curve. Games come from JSON description files (--game); results go
to stdout or --out as JSON or CSV. Exit codes: 0 success, 2 configuration
error, 3 infeasible request (enumeration caps, budget too small), 4 I/O
error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .exact import FeasibilityError
from .games import GameConstructionError, InvalidCoalitionError, UnsupportedFamilyError
from .harness import BOUND_METHODS, ConfigError, ExperimentConfig, run, write_result
from .stratified import BudgetTooSmallError


def _add_common(sub: argparse.ArgumentParser, game_required: bool = True):
    sub.add_argument("--game", metavar="FILE", required=game_required,
                     help="JSON game description file")
    sub.add_argument("--seed", type=int, default=0, help="root seed for all randomness")
    sub.add_argument("--out", metavar="FILE", help="write the result here instead of stdout")
    sub.add_argument("--format", choices=("csv", "json"), default="json",
                     help="output format (default json)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shapmc",
        description="Estimate Shapley values by sampling, with finite-sample error bounds.",
    )
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p = subs.add_parser("exact", help="brute-force exact values (small games)")
    _add_common(p)

    p = subs.add_parser("estimate-srs", help="permutation-sampling estimate for all players")
    _add_common(p)
    p.add_argument("--m", type=int, help="number of permutations")
    p.add_argument("--epsilon", type=float, help="target error radius (sizes m when given with --delta)")
    p.add_argument("--delta", type=float, help="allowed failure probability")
    p.add_argument("--bound", choices=("chebyshev", "hoeffding"),
                   help="which inequality sizes the run / labels the bound")

    p = subs.add_parser("estimate-stratified", help="size-stratified estimate")
    _add_common(p)
    p.add_argument("--m", type=int, required=True, help="sample budget per player")
    p.add_argument("--beta", type=float, required=True, help="allowed global failure probability")
    p.add_argument("--player", type=int, help="estimate only this player (default: all)")
    p.add_argument("--bounds", type=float, nargs=2, metavar=("A", "B"),
                   help="user-supplied linear coalition bounds")

    p = subs.add_parser("bounds", help="known facts, sample sizes and error radii for a game")
    _add_common(p)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--m", type=int)
    p.add_argument("--bounds", type=float, nargs=2, metavar=("A", "B"))

    p = subs.add_parser("coverage", help="empirical miss rate of a claimed error radius")
    _add_common(p, game_required=False)
    p.add_argument("--preset", choices=("clt-demo",),
                   help="built-in experiment; clt-demo contrasts the normal-theory "
                        "interval with the range-based radius")
    p.add_argument("--bound", choices=BOUND_METHODS, help="which radius to check")
    p.add_argument("--player", type=int, default=0)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--m", type=int, help="override the derived sample size")
    p.add_argument("--trials", type=int, default=2000)

    p = subs.add_parser("compare", help="stratified bound vs. the unstratified floor")
    _add_common(p, game_required=False)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, help="player count (required without --game)")
    p.add_argument("--beta", type=float)
    p.add_argument("--bounds", type=float, nargs=2, metavar=("A", "B"))

    p = subs.add_parser("curve", help="error and bound vs. sample size")
    _add_common(p)
    p.add_argument("--bound", choices=BOUND_METHODS, required=True)
    p.add_argument("--player", type=int, default=0)
    p.add_argument("--m-grid", required=True, help="comma-separated sample sizes")
    p.add_argument("--seeds-per-point", type=int, default=50)
    p.add_argument("--delta", type=float)
    p.add_argument("--beta", type=float)

    return parser


_SUBCOMMAND_TO_COMMAND = {
    "exact": "exact",
    "estimate-srs": "srs",
    "estimate-stratified": "stratified",
    "bounds": "bounds",
    "coverage": "coverage",
    "compare": "compare",
    "curve": "curve",
}


def _load_game_spec(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise GameConstructionError(f"game file {path} is not valid JSON: {exc}") from exc


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    game = _load_game_spec(args.game) if getattr(args, "game", None) else None
    m_grid = None
    if getattr(args, "m_grid", None):
        try:
            m_grid = tuple(int(tok) for tok in args.m_grid.split(",") if tok.strip())
        except ValueError as exc:
            raise ConfigError(f"--m-grid must be comma-separated integers: {exc}") from exc
        if not m_grid:
            raise ConfigError("--m-grid is empty")
    bounds = getattr(args, "bounds", None)
    return ExperimentConfig(
        command=_SUBCOMMAND_TO_COMMAND[args.subcommand],
        game=game,
        epsilon=getattr(args, "epsilon", None),
        delta=getattr(args, "delta", None),
        beta=getattr(args, "beta", None),
        m=getattr(args, "m", None),
        trials=getattr(args, "trials", None),
        seed=args.seed,
        player=getattr(args, "player", None),
        bound_method=getattr(args, "bound", None),
        m_grid=m_grid,
        seeds_per_point=getattr(args, "seeds_per_point", None),
        preset=getattr(args, "preset", None),
        n=getattr(args, "n", None),
        linear_bounds=tuple(bounds) if bounds else None,
        out=args.out,
        fmt=args.format,
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        result = run(config)
        if config.out:
            write_result(result, config.out, config.fmt)
            print(f"wrote {config.fmt} result to {config.out}")
        else:
            sys.stdout.write(result.render(config.fmt))
        return 0
    except (FeasibilityError, BudgetTooSmallError) as exc:
        print(f"shapmc: infeasible: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"shapmc: i/o error: {exc}", file=sys.stderr)
        return 4
    except (ConfigError, GameConstructionError, UnsupportedFamilyError,
            InvalidCoalitionError, ValueError) as exc:
        print(f"shapmc: config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
