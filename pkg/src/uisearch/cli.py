"""Command-line entry point.

Subcommands: solve, evaluate, simulate, sweep, calibrate. Data goes to
stdout (or --out); diagnostics go to stderr. Exit codes: 0 success,
2 configuration or validation problem, 3 solver nonconvergence,
4 infeasible calibration.
"""

import argparse
import contextlib
import json
import sys
from dataclasses import asdict

from .config import parse_config
from .distributions import UniformOffers
from .errors import ConfigError, InfeasibleError, NonConvergenceError
from .evaluate import build_policy, evaluate_policy
from .experiments import Calibration, calibrate_z, sweep_beliefs
from .montecarlo import CounterStream, simulate_many, simulate_spell
from .schedule import solve_schedules

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NONCONVERGENCE = 3
EXIT_INFEASIBLE = 4


def _fmt(value) -> str:
    """Floating values are printed with 12 significant digits."""
    return format(float(value), ".12g")


@contextlib.contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w") as handle:
            yield handle


def _cmd_solve(args):
    cfg = parse_config(args.config)
    schedule = solve_schedules(cfg.distribution, cfg.params, cfg.belief,
                               tol=cfg.tol, max_iter=cfg.max_iter)
    with _output(args.out) as out:
        out.write("n,w_basic,w_ext\n")
        for n, w in enumerate(schedule.basic):
            ext = (_fmt(schedule.with_extension[n])
                   if n < len(schedule.with_extension) else "")
            out.write(f"{n},{_fmt(w)},{ext}\n")
    return EXIT_OK


def _cmd_evaluate(args):
    cfg = parse_config(args.config)
    policy = build_policy(cfg.distribution, cfg.params, cfg.belief,
                          true_length=cfg.truth.length,
                          tol=cfg.tol, max_iter=cfg.max_iter)
    optimal = build_policy(cfg.distribution, cfg.params, cfg.truth,
                           true_length=cfg.truth.length,
                           tol=cfg.tol, max_iter=cfg.max_iter)
    result = evaluate_policy(policy, cfg.truth, cfg.params, cfg.distribution)
    baseline = evaluate_policy(optimal, cfg.truth, cfg.params, cfg.distribution)
    payload = {
        "welfare": result.welfare,
        "duration": result.duration,
        "accepted_wage": result.accepted_wage,
        "loss_pct": 100.0 * (baseline.welfare - result.welfare) / baseline.welfare,
    }
    with _output(args.out) as out:
        json.dump(payload, out)
        out.write("\n")
    return EXIT_OK


def _cmd_simulate(args):
    overrides = {"spells": args.spells, "seed": args.seed,
                 "max_periods": args.max_periods}
    cfg = parse_config(args.config, overrides=overrides)
    policy = build_policy(cfg.distribution, cfg.params, cfg.belief,
                          true_length=cfg.truth.length,
                          tol=cfg.tol, max_iter=cfg.max_iter)
    summary = simulate_many(policy, cfg.truth, cfg.params, cfg.distribution,
                            cfg.spells, cfg.seed,
                            max_periods=cfg.max_periods, n_workers=args.threads)
    with _output(args.out) as out:
        if args.trace:
            out.write("spell,duration,accepted_wage,welfare,extended,"
                      "extension_period,truncated\n")
            for i in range(min(args.trace, cfg.spells)):
                stream = CounterStream(cfg.seed, i)
                rec = simulate_spell(policy, cfg.truth, cfg.params,
                                     cfg.distribution, stream,
                                     max_periods=cfg.max_periods)
                wage = "" if rec.accepted_wage is None else _fmt(rec.accepted_wage)
                period = "" if rec.extension_period is None else rec.extension_period
                out.write(f"{i},{rec.duration},{wage},{_fmt(rec.welfare)},"
                          f"{str(rec.extended).lower()},{period},"
                          f"{str(rec.truncated).lower()}\n")
        json.dump(asdict(summary), out)
        out.write("\n")
    return EXIT_OK


def _parse_grid(spec, as_int):
    try:
        lo_s, hi_s, step_s = spec.split(":")
        lo, hi, step = float(lo_s), float(hi_s), float(step_s)
    except ValueError as exc:
        raise ConfigError("grid", f"expected LO:HI:STEP, got {spec!r}") from exc
    if step <= 0 or hi < lo:
        raise ConfigError("grid", f"empty or descending grid {spec!r}")
    values = []
    k = 0
    while True:
        v = lo + k * step
        if v > hi + 1e-9:
            break
        values.append(int(round(v)) if as_int else round(v, 12))
        k += 1
    return values


def _cmd_sweep(args):
    overrides = {"spells": args.spells, "seed": args.seed}
    cfg = parse_config(args.config, overrides=overrides)
    cal = Calibration(params=cfg.params, dist=cfg.distribution, truth=cfg.truth,
                      z_full=cfg.z + cfg.c, target_duration=float("nan"))
    grid = None
    if args.grid:
        grid = _parse_grid(args.grid, as_int=(args.vary == "len"))
        if args.vary == "delta" and any(not 0.0 <= v <= 1.0 for v in grid):
            raise ConfigError("grid", "belief probabilities must lie in [0, 1]")
        if args.vary == "len" and any(v < 1 for v in grid):
            raise ConfigError("grid", "belief lengths must be at least 1")
    rows = sweep_beliefs(cal, vary=args.vary, grid=grid, mode=args.mode,
                         seed=cfg.seed, spells=cfg.spells,
                         max_periods=cfg.max_periods, n_workers=args.threads,
                         tol=cfg.tol, max_iter=cfg.max_iter)
    with _output(args.out) as out:
        out.write("varied_param,belief_value,misperception,loss_pct,"
                  "duration_ratio,wage_gap_pct\n")
        for row in rows:
            out.write(f"{row.varied_param},{_fmt(row.belief_value)},"
                      f"{_fmt(row.misperception)},{_fmt(row.loss_pct)},"
                      f"{_fmt(row.duration_ratio)},{_fmt(row.wage_gap_pct)}\n")
    return EXIT_OK


def _cmd_calibrate(args):
    z_full = calibrate_z(args.duration, args.beta, UniformOffers())
    payload = {"z_full": z_full, "z": 0.5 * z_full, "c": 0.5 * z_full}
    with _output(args.out) as out:
        json.dump(payload, out)
        out.write("\n")
    return EXIT_OK


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="uisearch",
        description="Job search with expiring, possibly extended UI benefits.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_config=True):
        if needs_config:
            p.add_argument("--config", required=True, help="JSON config file")
        p.add_argument("--out", default=None, help="write data to a file")

    p = sub.add_parser("solve", help="emit both reservation-wage schedules as CSV")
    add_common(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("evaluate", help="exact policy evaluation as JSON")
    add_common(p)
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("simulate", help="Monte Carlo spell simulation as JSON")
    add_common(p)
    p.add_argument("--spells", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-periods", type=int, default=None)
    p.add_argument("--trace", type=int, default=0, metavar="K",
                   help="also dump the first K spell records as CSV")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("sweep", help="belief-misperception sweep as CSV")
    add_common(p)
    p.add_argument("--vary", choices=("delta", "len"), default="delta")
    p.add_argument("--grid", default=None, metavar="LO:HI:STEP")
    p.add_argument("--mode", choices=("exact", "mc"), default="exact")
    p.add_argument("--spells", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("calibrate", help="solve the nonwork flow for a duration target")
    add_common(p, needs_config=False)
    p.add_argument("--duration", type=float, required=True)
    p.add_argument("--beta", type=float, default=0.95)
    p.set_defaults(func=_cmd_calibrate)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except InfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
