"""Calibration and belief-misperception sweeps.

The headline experiment fixes a true extension process, lets the worker
hold a wrong belief about either the probability or the length of the
extension, and measures the welfare lost to the resulting suboptimal
acceptance decisions, together with how spell duration and the accepted
wage shift. Exact evaluation is the default; Monte Carlo mode exists to
demonstrate agreement.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .distributions import OfferDistribution, UniformOffers
from .errors import InfeasibleError
from .evaluate import PolicyProfile, evaluate_policy
from .montecarlo import DEFAULT_MAX_PERIODS, simulate_many
from .params import ExtensionSpec, MarketParams
from .schedule import (DEFAULT_MAX_ITER, DEFAULT_TOL, build_basic_schedule,
                       build_extension_schedule, solve_w0_basic)

DELTA_GRID_DEFAULT = tuple(round(0.10 + 0.05 * k, 2) for k in range(17))
LENGTH_GRID_DEFAULT = tuple(range(5, 46, 5))


@dataclass(frozen=True)
class Calibration:
    """A fully pinned-down experiment environment."""

    params: MarketParams
    dist: OfferDistribution
    truth: ExtensionSpec
    z_full: float
    target_duration: float


def calibrate_z(target_duration, beta, dist: OfferDistribution,
                tol=1e-12, max_iter=DEFAULT_MAX_ITER) -> float:
    """Nonwork flow that yields a target expected unemployment duration.

    With no benefits and no extension the acceptance threshold is
    constant, so expected duration is the geometric mean
    ``1 / (1 - F(w0))``; this inverts that relation by bisecting on the
    flow value. Duration targets at or below 1 are infeasible (they
    would require certain acceptance), as are targets below the duration
    implied by a zero flow value.
    """
    if target_duration <= 1.0:
        raise InfeasibleError("duration target must exceed 1")
    probe = MarketParams(beta=beta, z=1.0, c=1.0, n_periods=0)

    def duration(flow):
        w0 = solve_w0_basic(dist, probe, flow, tol=tol, max_iter=max_iter)
        return 1.0 / (1.0 - dist.cdf(w0))

    feasible_floor = max(
        0.0, (dist.support_low - beta * dist.mean) / (1.0 - beta))
    lo = feasible_floor + 1e-9
    hi = dist.support_high - 1e-12
    if duration(lo) >= target_duration:
        raise InfeasibleError(
            f"target duration {target_duration} implies a nonpositive flow value")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if duration(mid) < target_duration:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def default_calibration(target_duration=10.0, beta=0.95, n_periods=10,
                        truth=ExtensionSpec(delta=0.5, length=25),
                        dist=UniformOffers()) -> Calibration:
    """Benchmark environment: solve the nonwork flow, then split it
    half-and-half between leisure value and compensation."""
    z_full = calibrate_z(target_duration, beta, dist)
    half = 0.5 * z_full
    params = MarketParams(beta=beta, z=half, c=half, n_periods=n_periods)
    return Calibration(params=params, dist=dist, truth=truth,
                       z_full=z_full, target_duration=target_duration)


@dataclass(frozen=True)
class SweepRow:
    """One grid point of a misperception sweep."""

    varied_param: str
    belief_value: float
    misperception: float
    loss_pct: float
    duration_ratio: float
    wage_gap_pct: float


def _belief_for(cal: Calibration, vary, value) -> ExtensionSpec:
    if vary == "delta":
        return ExtensionSpec(delta=float(value), length=cal.truth.length)
    return ExtensionSpec(delta=cal.truth.delta, length=int(value))


def sweep_beliefs(cal: Calibration, vary="delta", grid=None, mode="exact",
                  seed=0, spells=1_000_000, max_periods=DEFAULT_MAX_PERIODS,
                  n_workers=1, tol=DEFAULT_TOL,
                  max_iter=DEFAULT_MAX_ITER) -> list[SweepRow]:
    """Evaluate a grid of misperceived beliefs against the truth.

    ``vary`` is ``"delta"`` or ``"len"``; the other belief parameter is
    pinned to its true value. Exact mode uses the closed recursions; mc
    mode simulates every grid point (and the baseline) with the same
    master seed, so common random numbers cancel out of the
    comparisons. Rows come back in grid order.
    """
    vary = {"len": "length"}.get(vary, vary)
    if vary not in ("delta", "length"):
        raise ValueError("vary must be 'delta' or 'len'")
    if mode not in ("exact", "mc"):
        raise ValueError("mode must be 'exact' or 'mc'")
    if grid is None:
        grid = DELTA_GRID_DEFAULT if vary == "delta" else LENGTH_GRID_DEFAULT

    params, dist, truth = cal.params, cal.dist, cal.truth
    beliefs = [_belief_for(cal, vary, v) for v in grid]
    max_length = max([truth.length] + [b.length for b in beliefs])
    horizon = max(params.n_periods - 1, 0) + max_length
    basic = build_basic_schedule(dist, params, horizon, tol=tol, max_iter=max_iter)

    def statistics(belief):
        pre = build_extension_schedule(dist, params, belief, basic,
                                       tol=tol, max_iter=max_iter)
        policy = PolicyProfile(pre_thresholds=pre, post_thresholds=basic)
        if mode == "exact":
            ev = evaluate_policy(policy, truth, params, dist)
            return ev.welfare, ev.duration, ev.accepted_wage
        summary = simulate_many(policy, truth, params, dist, spells, seed,
                                max_periods=max_periods)
        return summary.welfare_mean, summary.duration_mean, summary.wage_mean

    base_welfare, base_duration, base_wage = statistics(truth)

    if n_workers > 1 and len(beliefs) > 1:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            stats = list(pool.map(statistics, beliefs))
    else:
        stats = [statistics(b) for b in beliefs]

    rows = []
    for value, (welfare, dur, wage) in zip(grid, stats):
        true_value = truth.delta if vary == "delta" else truth.length
        rows.append(SweepRow(
            varied_param=vary if vary == "delta" else "len",
            belief_value=float(value),
            misperception=float(value) - true_value,
            loss_pct=100.0 * (base_welfare - welfare) / base_welfare,
            duration_ratio=dur / base_duration,
            wage_gap_pct=100.0 * (wage - base_wage) / base_wage,
        ))
    return rows
