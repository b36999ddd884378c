"""Experiment front end: estimator runs, coverage checks, comparisons, emission.

Everything here is plumbing around the estimators: resolving ground truth and
known facts for a game, repeating estimations over derived seeds to measure
how often the claimed error radius is violated, tabulating error against
sample size, and writing results as CSV or JSON with a fixed float format so
reruns of the same configuration are byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import exact as ex
from .exact import FeasibilityError
from .games import Game, LinearBounds, game_from_spec, make_table_game
from .srs import (
    CHEBYSHEV,
    CLT_BASELINE,
    HOEFFDING,
    STRATIFIED,
    ErrorBound,
    chebyshev_error_bound,
    chebyshev_sample_size,
    clt_interval_halfwidth,
    collect_marginal_samples,
    estimate_srs,
    hoeffding_error_bound,
    hoeffding_sample_size,
)
from .stratified import (
    estimate_stratified,
    estimate_stratified_all,
    per_stratum_delta,
    srs_error_floor,
    stratified_beats_srs,
    stratified_error_bound,
)

COMMANDS = ("exact", "srs", "stratified", "bounds", "coverage", "compare", "curve")
BOUND_METHODS = (CHEBYSHEV, HOEFFDING, STRATIFIED, CLT_BASELINE)

ESTIMATE_COLUMNS = [
    "player", "estimate", "exact_if_known", "abs_error_if_known",
    "epsilon_bound", "method", "m", "seed",
]


class ConfigError(ValueError):
    """The experiment configuration is incomplete or inconsistent."""


@dataclass
class ExperimentConfig:
    """One experiment: a command plus whichever parameters it needs."""

    command: str
    game: dict | None = None
    epsilon: float | None = None
    delta: float | None = None
    beta: float | None = None
    m: int | None = None
    trials: int | None = None
    seed: int = 0
    player: int | None = None
    bound_method: str | None = None
    m_grid: tuple | None = None
    seeds_per_point: int | None = None
    preset: str | None = None
    n: int | None = None
    linear_bounds: tuple | None = None
    out: str | None = None
    fmt: str = "json"


@dataclass
class CoverageReport:
    """Outcome of repeated estimations checked against a claimed radius.

    A trial misses when its absolute error exceeds its threshold; for the
    non-asymptotic methods the threshold is one fixed epsilon, for the
    normal-theory baseline it is that trial's own data-dependent half-width.
    """

    trials: int
    misses: int
    empirical_miss_rate: float
    guaranteed_delta: float
    per_trial_errors: np.ndarray
    per_trial_thresholds: np.ndarray
    method: str
    m: int
    epsilon: float | None
    player: int


# ---------------------------------------------------------------------------
# known-fact resolution

def ground_truth(game: Game) -> np.ndarray:
    """Exact Shapley values from metadata or brute force; error if neither works."""
    if game.metadata is not None and game.metadata.exact_shapley is not None:
        return np.array(game.metadata.exact_shapley)
    if game.n > ex.MAX_ENUM_PLAYERS:
        raise FeasibilityError(
            f"no ground truth: n={game.n} exceeds the enumeration cap and "
            "the game carries no exact solution"
        )
    return ex.shapley_exact(game)


def player_variance(game: Game, i: int) -> float:
    """Variance of player i's contributions: exact when enumerable, else metadata."""
    if game.n <= ex.MAX_ENUM_PLAYERS:
        return ex.marginal_variance_exact(game, i)
    if game.metadata is not None and game.metadata.variance_bound is not None:
        return game.metadata.variance_bound
    raise FeasibilityError(f"variance of player {i} is neither enumerable nor known")


def player_range(game: Game, i: int) -> float:
    """Contribution range of player i: exact when enumerable, else metadata."""
    if game.n <= ex.MAX_ENUM_PLAYERS:
        return ex.marginal_range_exact(game, i)
    if game.metadata is not None and game.metadata.range_bound is not None:
        return game.metadata.range_bound
    raise FeasibilityError(f"range of player {i} is neither enumerable nor known")


def game_variance_bound(game: Game) -> float:
    """Max-over-players variance: metadata first, brute force as fallback."""
    if game.metadata is not None and game.metadata.variance_bound is not None:
        return game.metadata.variance_bound
    if game.n <= ex.MAX_ENUM_PLAYERS:
        return max(ex.marginal_variance_exact(game, i) for i in range(game.n))
    raise FeasibilityError("variance is neither known nor enumerable")


def game_range_bound(game: Game) -> float:
    """Max-over-players range: metadata first, brute force as fallback."""
    if game.metadata is not None and game.metadata.range_bound is not None:
        return game.metadata.range_bound
    if game.n <= ex.MAX_ENUM_PLAYERS:
        return max(ex.marginal_range_exact(game, i) for i in range(game.n))
    raise FeasibilityError("range is neither known nor enumerable")


def resolve_linear_bounds(game: Game, override: tuple | None = None) -> tuple[LinearBounds, str]:
    """Linear coalition bounds plus the source they came from.

    Precedence: explicit user override, constructor metadata, the family
    closed form, exhaustive enumeration.
    """
    if override is not None:
        a, b = override
        return LinearBounds(float(a), float(b)), "user"
    if game.metadata is not None and game.metadata.linear_bounds is not None:
        return game.metadata.linear_bounds, "metadata"
    try:
        return ex.linear_bounds_closed_form(game), "closed-form"
    except Exception:
        pass
    if game.n <= ex.MAX_ENUM_PLAYERS:
        return ex.linear_bounds_exact(game), "exact"
    raise FeasibilityError("linear bounds are neither known, closed-form, nor enumerable")


# ---------------------------------------------------------------------------
# experiments

def _stratified_budget(d: float, epsilon: float, n: int, beta: float) -> int:
    # Invert the aggregate radius for the budget that brings it down to epsilon.
    delta = per_stratum_delta(beta, n)
    root = d * math.sqrt(-math.log(delta / 2.0)) * (n + 1) / (2.0 * epsilon)
    return max(n, math.ceil(root * root))


def coverage_experiment(
    game: Game,
    i: int,
    method: str,
    epsilon: float | None,
    delta_or_beta: float,
    trials: int,
    seed: int,
    m: int | None = None,
) -> CoverageReport:
    """Measure how often the claimed error radius is violated.

    Runs ``trials`` independent estimations of player i (trial t uses seed
    ``seed + t``, so any trial can be reproduced on its own) and counts
    errors exceeding the threshold. For chebyshev/hoeffding/stratified the
    sample size is derived from epsilon when not given explicitly, or the
    radius from the sample size when epsilon is omitted; the normal-theory
    baseline has no size formula, so it requires an explicit m and checks
    each trial against its own interval half-width.
    """
    if method not in BOUND_METHODS:
        raise ConfigError(f"unknown bound method {method!r}; expected one of {BOUND_METHODS}")
    if trials < 1:
        raise ConfigError(f"trials must be >= 1, got {trials}")
    delta = delta_or_beta
    truth = float(ground_truth(game)[i])

    if method == CHEBYSHEV:
        sigma2 = player_variance(game, i)
        if m is None:
            if epsilon is None:
                raise ConfigError("chebyshev coverage needs epsilon or m")
            m = chebyshev_sample_size(sigma2, epsilon, delta)
        if epsilon is None:
            epsilon = chebyshev_error_bound(sigma2, m, delta)
    elif method == HOEFFDING:
        r = player_range(game, i)
        if m is None:
            if epsilon is None:
                raise ConfigError("hoeffding coverage needs epsilon or m")
            m = hoeffding_sample_size(r, epsilon, delta)
        if epsilon is None:
            epsilon = hoeffding_error_bound(r, m, delta)
    elif method == STRATIFIED:
        bounds, _ = resolve_linear_bounds(game)
        if m is None:
            if epsilon is None:
                raise ConfigError("stratified coverage needs epsilon or m")
            m = _stratified_budget(bounds.d, epsilon, game.n, delta)
        if epsilon is None:
            epsilon = stratified_error_bound(bounds.d, m, game.n, delta)
    else:  # CLT baseline: no finite-sample size formula exists
        if m is None:
            raise ConfigError("the clt baseline has no size formula; pass m explicitly")

    errors = np.empty(trials)
    thresholds = np.empty(trials)
    for t in range(trials):
        trial_seed = seed + t
        if method == STRATIFIED:
            est = estimate_stratified(game, i, m, delta, bounds, trial_seed)
            errors[t] = abs(est.global_estimate - truth)
            thresholds[t] = epsilon
        else:
            samples = collect_marginal_samples(game, i, m, trial_seed)
            errors[t] = abs(float(samples.mean()) - truth)
            if method == CLT_BASELINE:
                thresholds[t] = clt_interval_halfwidth(samples, delta)
            else:
                thresholds[t] = epsilon
    misses = int(np.count_nonzero(errors > thresholds))
    return CoverageReport(
        trials=trials,
        misses=misses,
        empirical_miss_rate=misses / trials,
        guaranteed_delta=delta,
        per_trial_errors=errors,
        per_trial_thresholds=thresholds,
        method=method,
        m=m,
        epsilon=epsilon,
        player=i,
    )


def error_curve(
    game: Game,
    i: int,
    method: str,
    m_grid,
    seeds_per_point: int,
    delta_or_beta: float,
    seed: int,
) -> list[dict]:
    """Mean absolute error and claimed radius per sample-size grid point."""
    if method not in BOUND_METHODS:
        raise ConfigError(f"unknown bound method {method!r}; expected one of {BOUND_METHODS}")
    if seeds_per_point < 1:
        raise ConfigError(f"seeds_per_point must be >= 1, got {seeds_per_point}")
    delta = delta_or_beta
    truth = float(ground_truth(game)[i])
    if method == CHEBYSHEV:
        sigma2 = player_variance(game, i)
    elif method == HOEFFDING:
        r = player_range(game, i)
    elif method == STRATIFIED:
        bounds, _ = resolve_linear_bounds(game)

    rows = []
    counter = 0
    for m in m_grid:
        m = int(m)
        errs = np.empty(seeds_per_point)
        widths = np.empty(seeds_per_point)
        for s in range(seeds_per_point):
            trial_seed = seed + counter
            counter += 1
            if method == STRATIFIED:
                est = estimate_stratified(game, i, m, delta, bounds, trial_seed)
                errs[s] = abs(est.global_estimate - truth)
            else:
                samples = collect_marginal_samples(game, i, m, trial_seed)
                errs[s] = abs(float(samples.mean()) - truth)
                if method == CLT_BASELINE:
                    widths[s] = clt_interval_halfwidth(samples, delta)
        if method == CHEBYSHEV:
            bound = chebyshev_error_bound(sigma2, m, delta)
        elif method == HOEFFDING:
            bound = hoeffding_error_bound(r, m, delta)
        elif method == STRATIFIED:
            bound = stratified_error_bound(bounds.d, m, game.n, delta)
        else:
            bound = float(widths.mean())
        rows.append({"m": m, "mean_abs_error": float(errs.mean()), "bound": bound})
    return rows


def clt_demo_game() -> Game:
    """The preset game whose contribution distribution breaks the CLT interval.

    Ten players, value 1 only for the full coalition: a player's marginal
    contribution is 1 exactly when it joins last and 0 otherwise, a lopsided
    two-point distribution. At small sample sizes the all-zero draw is
    common, collapses the sample standard deviation, and the normal-theory
    interval confidently excludes the true value.
    """
    n = 10
    full = (1 << n) - 1
    table = {mask: (1.0 if mask == full else 0.0) for mask in range(1 << n)}
    return make_table_game(n, table)


def run_clt_demo(trials: int, seed: int, m: int = 30, delta: float = 0.05) -> dict:
    """Coverage of the normal-theory interval vs. the range-based radius.

    Both reports reuse the same per-trial seeds, hence the exact same
    sampled permutations; only the claimed thresholds differ.
    """
    game = clt_demo_game()
    clt = coverage_experiment(game, 0, CLT_BASELINE, None, delta, trials, seed, m=m)
    hoeff = coverage_experiment(game, 0, HOEFFDING, None, delta, trials, seed, m=m)
    return {"clt": clt, "hoeffding": hoeff}


# ---------------------------------------------------------------------------
# emission

def fmt_float(x: float) -> str:
    """Fixed-width scientific notation with 9 significant digits."""
    return f"{float(x):.8e}"


def round9(x: float) -> float:
    """The double nearest the 9-significant-digit rendering of x."""
    return float(fmt_float(x))


def _jsonify(obj):
    if isinstance(obj, float):
        return round9(obj)
    if isinstance(obj, (np.floating,)):
        return round9(float(obj))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [_jsonify(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    return obj


@dataclass
class Result:
    """A command's output: header facts plus homogeneous rows.

    The rows carry the numeric content and render identically (after float
    rounding) in both CSV and JSON; raw_bits optionally preserves selected
    values at full precision as hex floats in the JSON form only.
    """

    command: str
    header: dict
    columns: list
    rows: list
    raw_bits: dict = field(default_factory=dict)

    def to_json_str(self) -> str:
        payload = {
            "command": self.command,
            **_jsonify(self.header),
            "columns": list(self.columns),
            "rows": [_jsonify(row) for row in self.rows],
        }
        if self.raw_bits:
            payload["raw_bits"] = {
                k: [float(v).hex() for v in vals] for k, vals in self.raw_bits.items()
            }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    def to_csv_str(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            out = []
            for col in self.columns:
                v = row.get(col)
                if v is None:
                    out.append("")
                elif isinstance(v, bool):
                    out.append("true" if v else "false")
                elif isinstance(v, (float, np.floating)):
                    out.append(fmt_float(v))
                else:
                    out.append(str(v))
            writer.writerow(out)
        return buf.getvalue()

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json_str()
        if fmt == "csv":
            return self.to_csv_str()
        raise ConfigError(f"unknown output format {fmt!r}")


def _estimate_rows(game: Game, per_player, method: str, m, seed,
                   epsilon_bound=None) -> list:
    try:
        truth = ground_truth(game)
    except FeasibilityError:
        truth = None
    rows = []
    for i in range(game.n):
        est = float(per_player[i])
        row = {
            "player": i,
            "estimate": est,
            "exact_if_known": None if truth is None else float(truth[i]),
            "abs_error_if_known": None if truth is None else abs(est - float(truth[i])),
            "epsilon_bound": epsilon_bound,
            "method": method,
            "m": m,
            "seed": seed,
        }
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# command dispatch

def _require(config: ExperimentConfig, *names):
    missing = [name for name in names if getattr(config, name) is None]
    if missing:
        raise ConfigError(
            f"command {config.command!r} requires {', '.join(missing)}"
        )


def _config_game(config: ExperimentConfig) -> Game:
    if config.game is None:
        raise ConfigError(f"command {config.command!r} requires a game")
    return game_from_spec(config.game)


def _run_exact(config: ExperimentConfig) -> Result:
    game = _config_game(config)
    values = ex.shapley_exact(game)
    rows = _estimate_rows(game, values, "exact", None, None)
    return Result(
        command="exact",
        header={"n": game.n, "family": game.family, "grand_value": float(values.sum())},
        columns=ESTIMATE_COLUMNS,
        rows=rows,
        raw_bits={"estimate": [float(v) for v in values]},
    )


def _run_srs(config: ExperimentConfig) -> Result:
    game = _config_game(config)
    method = config.bound_method
    m = config.m
    bound: ErrorBound | None = None
    if m is None:
        _require(config, "epsilon", "delta")
        if method is None:
            # Prefer the exponential range bound; fall back to variance.
            try:
                game_range_bound(game)
                method = HOEFFDING
            except FeasibilityError:
                method = CHEBYSHEV
        if method == HOEFFDING:
            r = game_range_bound(game)
            m = hoeffding_sample_size(r, config.epsilon, config.delta)
            bound = ErrorBound(config.epsilon, config.delta, HOEFFDING, {"r": r})
        elif method == CHEBYSHEV:
            sigma2 = game_variance_bound(game)
            m = chebyshev_sample_size(sigma2, config.epsilon, config.delta)
            bound = ErrorBound(config.epsilon, config.delta, CHEBYSHEV, {"sigma2": sigma2})
        else:
            raise ConfigError(f"cannot size a run from method {method!r}")
    elif config.delta is not None:
        try:
            if method in (None, HOEFFDING):
                r = game_range_bound(game)
                bound = ErrorBound(hoeffding_error_bound(r, m, config.delta),
                                   config.delta, HOEFFDING, {"r": r})
            elif method == CHEBYSHEV:
                sigma2 = game_variance_bound(game)
                bound = ErrorBound(chebyshev_error_bound(sigma2, m, config.delta),
                                   config.delta, CHEBYSHEV, {"sigma2": sigma2})
        except FeasibilityError:
            bound = None
    est = estimate_srs(game, m, config.seed)
    if bound is not None:
        est = replace(est, bound=bound)
    header = {
        "n": game.n,
        "family": game.family,
        "m": m,
        "seed": config.seed,
        "method": bound.method if bound else "srs",
    }
    if bound is not None:
        header["epsilon"] = bound.epsilon
        header["delta"] = bound.delta
        header["bound_inputs"] = dict(bound.inputs)
    rows = _estimate_rows(game, est.per_player, header["method"], m, config.seed,
                          epsilon_bound=bound.epsilon if bound else None)
    return Result(
        command="srs",
        header=header,
        columns=ESTIMATE_COLUMNS,
        rows=rows,
        raw_bits={"estimate": [float(v) for v in est.per_player]},
    )


def _run_stratified(config: ExperimentConfig) -> Result:
    game = _config_game(config)
    _require(config, "m", "beta")
    bounds, source = resolve_linear_bounds(game, config.linear_bounds)
    if config.player is not None:
        estimates = [estimate_stratified(game, config.player, config.m, config.beta,
                                         bounds, config.seed, d_source=source)]
    else:
        estimates = estimate_stratified_all(game, config.m, config.beta,
                                            bounds, config.seed, d_source=source)
    epsilon = estimates[0].bound.epsilon
    try:
        truth = ground_truth(game)
    except FeasibilityError:
        truth = None
    rows = []
    for est in estimates:
        i = est.player
        rows.append({
            "player": i,
            "estimate": est.global_estimate,
            "exact_if_known": None if truth is None else float(truth[i]),
            "abs_error_if_known": None if truth is None
            else abs(est.global_estimate - float(truth[i])),
            "epsilon_bound": epsilon,
            "method": STRATIFIED,
            "m": config.m,
            "seed": config.seed,
        })
    header = {
        "n": game.n,
        "family": game.family,
        "m": config.m,
        "seed": config.seed,
        "beta": config.beta,
        "delta_per_stratum": estimates[0].delta_per_stratum,
        "epsilon": epsilon,
        "linear_bounds": {"a": bounds.a, "b": bounds.b, "d": bounds.d, "source": source},
        "allocation": [int(c) for c in estimates[0].plan.counts],
    }
    return Result(
        command="stratified",
        header=header,
        columns=ESTIMATE_COLUMNS,
        rows=rows,
        raw_bits={"estimate": [est.global_estimate for est in estimates]},
    )


def _run_bounds(config: ExperimentConfig) -> Result:
    game = _config_game(config)
    items: list = [("n", game.n), ("family", game.family)]
    try:
        bounds, source = resolve_linear_bounds(game, config.linear_bounds)
        items += [("a", bounds.a), ("b", bounds.b), ("d", bounds.d), ("d_source", source)]
    except FeasibilityError:
        bounds = None
    sigma2 = r = None
    try:
        sigma2 = game_variance_bound(game)
        items.append(("sigma2", sigma2))
    except FeasibilityError:
        pass
    try:
        r = game_range_bound(game)
        items.append(("r", r))
    except FeasibilityError:
        pass
    if config.epsilon is not None and config.delta is not None:
        if sigma2 is not None:
            items.append(("chebyshev_m",
                          chebyshev_sample_size(sigma2, config.epsilon, config.delta)))
        if r is not None:
            items.append(("hoeffding_m",
                          hoeffding_sample_size(r, config.epsilon, config.delta)))
    if config.m is not None and config.delta is not None:
        if sigma2 is not None:
            items.append(("chebyshev_epsilon",
                          chebyshev_error_bound(sigma2, config.m, config.delta)))
        if r is not None:
            items.append(("hoeffding_epsilon",
                          hoeffding_error_bound(r, config.m, config.delta)))
    if config.m is not None and config.beta is not None and bounds is not None:
        items.append(("stratified_epsilon",
                      stratified_error_bound(bounds.d, config.m, game.n, config.beta)))
        items.append(("delta_per_stratum", per_stratum_delta(config.beta, game.n)))
    rows = [{"quantity": k, "value": v} for k, v in items]
    return Result(command="bounds", header={"n": game.n}, columns=["quantity", "value"],
                  rows=rows)


def _coverage_rows(report: CoverageReport, label: str | None = None) -> list:
    rows = []
    for t in range(report.trials):
        rows.append({
            "trial": t,
            "method": label or report.method,
            "abs_error": float(report.per_trial_errors[t]),
            "threshold": float(report.per_trial_thresholds[t]),
            "miss": bool(report.per_trial_errors[t] > report.per_trial_thresholds[t]),
        })
    return rows


def _coverage_summary(report: CoverageReport) -> dict:
    return {
        "trials": report.trials,
        "misses": report.misses,
        "empirical_miss_rate": report.empirical_miss_rate,
        "guaranteed_delta": report.guaranteed_delta,
        "m": report.m,
        "epsilon": report.epsilon,
        "player": report.player,
    }


def _run_coverage(config: ExperimentConfig) -> Result:
    trials = config.trials if config.trials is not None else 2000
    if config.preset == "clt-demo":
        m = config.m if config.m is not None else 30
        delta = config.delta if config.delta is not None else 0.05
        reports = run_clt_demo(trials, config.seed, m=m, delta=delta)
        rows = _coverage_rows(reports["clt"]) + _coverage_rows(reports["hoeffding"])
        header = {
            "preset": "clt-demo",
            "seed": config.seed,
            "note": "clt-baseline carries no finite-sample guarantee",
            "summary": {name: _coverage_summary(rep) for name, rep in reports.items()},
        }
        return Result(command="coverage", header=header,
                      columns=["trial", "method", "abs_error", "threshold", "miss"],
                      rows=rows)
    if config.preset is not None:
        raise ConfigError(f"unknown preset {config.preset!r}")
    game = _config_game(config)
    _require(config, "bound_method")
    delta = config.beta if config.bound_method == STRATIFIED else config.delta
    if delta is None:
        raise ConfigError("coverage requires delta (or beta for the stratified method)")
    player = config.player if config.player is not None else 0
    report = coverage_experiment(game, player, config.bound_method, config.epsilon,
                                 delta, trials, config.seed, m=config.m)
    header = {
        "n": game.n,
        "family": game.family,
        "seed": config.seed,
        "summary": {report.method: _coverage_summary(report)},
    }
    if report.method == CLT_BASELINE:
        header["note"] = "clt-baseline carries no finite-sample guarantee"
    return Result(command="coverage", header=header,
                  columns=["trial", "method", "abs_error", "threshold", "miss"],
                  rows=_coverage_rows(report))


def _run_compare(config: ExperimentConfig) -> Result:
    if config.game is not None:
        game = _config_game(config)
        n = game.n
        bounds, source = resolve_linear_bounds(game, config.linear_bounds)
        d = bounds.d
    else:
        _require(config, "n")
        n = config.n
        if config.linear_bounds is not None:
            lb = LinearBounds(*map(float, config.linear_bounds))
            d, source = lb.d, "user"
        else:
            d, source = 1.0, "unit"
    _require(config, "m")
    beta = config.beta if config.beta is not None else 0.05
    delta = per_stratum_delta(beta, n)
    row = {
        "m": config.m,
        "n": n,
        "stratified_beats_srs": stratified_beats_srs(config.m, n),
        "threshold_m": (n + 1) ** 2 / 4.0,
        "stratified_bound": stratified_error_bound(d, config.m, n, beta),
        "srs_floor": srs_error_floor(d, n, delta),
    }
    header = {"beta": beta, "delta_per_stratum": delta, "d": d, "d_source": source}
    return Result(command="compare", header=header, columns=list(row), rows=[row])


def _run_curve(config: ExperimentConfig) -> Result:
    game = _config_game(config)
    _require(config, "bound_method", "m_grid")
    delta = config.beta if config.bound_method == STRATIFIED else config.delta
    if delta is None:
        raise ConfigError("curve requires delta (or beta for the stratified method)")
    player = config.player if config.player is not None else 0
    spp = config.seeds_per_point if config.seeds_per_point is not None else 50
    rows = error_curve(game, player, config.bound_method, config.m_grid, spp,
                       delta, config.seed)
    header = {
        "n": game.n,
        "family": game.family,
        "player": player,
        "method": config.bound_method,
        "seeds_per_point": spp,
        "delta": delta,
        "seed": config.seed,
    }
    if config.bound_method == CLT_BASELINE:
        header["note"] = "clt-baseline carries no finite-sample guarantee"
    return Result(command="curve", header=header,
                  columns=["m", "mean_abs_error", "bound"], rows=rows)


_RUNNERS = {
    "exact": _run_exact,
    "srs": _run_srs,
    "stratified": _run_stratified,
    "bounds": _run_bounds,
    "coverage": _run_coverage,
    "compare": _run_compare,
    "curve": _run_curve,
}


def run(config: ExperimentConfig) -> Result:
    """Dispatch one experiment; all randomness derives from config.seed."""
    runner = _RUNNERS.get(config.command)
    if runner is None:
        raise ConfigError(f"unknown command {config.command!r}; expected one of {COMMANDS}")
    return runner(config)


def write_result(result: Result, out: str, fmt: str):
    """Write the rendered result to ``out``."""
    text = result.render(fmt)
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
