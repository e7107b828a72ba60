"""Reservation-wage schedules for job search with expiring benefits.

Two regimes are solved. After an extension has occurred (or when none is
possible) the worker faces plain expiring benefits, and the reservation
wage with zero entitlement is the unique fixed point of a contraction
with modulus ``beta * F``. Before an extension, each period carries a
perceived chance ``delta`` of gaining ``length`` extra periods, and the
zero-entitlement wage is the fixed point of a contraction with modulus
``beta * (1 - delta) * F``. Both schedules then build upward by a
one-step recursion on the option-value kernel.
"""

from dataclasses import dataclass

import numpy as np

from .distributions import OfferDistribution
from .errors import NonConvergenceError
from .params import ExtensionSpec, MarketParams

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 100_000


def upsilon(dist: OfferDistribution, x) -> float:
    """Expected value of max(x, w) under the offer distribution.

    This is the option-value kernel of every recursion:
    ``x * F(x) + int_x^w_high w dF(w)``. It is nondecreasing in x and
    bounded above by the top of the wage support. ``x`` must lie inside
    the support.
    """
    lo, hi = dist.support_low, dist.support_high
    if x < lo or x > hi:
        raise ValueError(f"upsilon argument {x} outside support [{lo}, {hi}]")
    return x * dist.cdf(x) + dist.partial_expectation(x, hi)


def _check_solvable(dist, beta, flow):
    if not 0.0 < beta < 1.0:
        raise ValueError("beta must lie in (0, 1) to solve a fixed point")
    if not flow < dist.support_high:
        raise ValueError("flow income must lie below the top of the wage support")
    if not dist.support_low < (1.0 - beta) * flow + beta * dist.mean:
        raise ValueError("offer distribution violates the interiority condition")


def solve_w0_basic(dist: OfferDistribution, params: MarketParams, flow,
                   tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER) -> float:
    """Reservation wage with zero entitlement and no chance of extension.

    Picard iteration on ``x -> flow * (1 - beta) + beta * upsilon(x)``
    from the bottom of the support. ``flow`` is ``z`` for the
    expired-benefit state; passing ``z + c`` instead solves the
    indefinite-benefit fixed point used as a convergence diagnostic.

    Raises
    ------
    NonConvergenceError
        If ``max_iter`` iterations do not bring the step below ``tol``.
        Unreachable for valid inputs: the contraction modulus is at most
        ``beta``.
    """
    beta = params.beta
    _check_solvable(dist, beta, flow)
    base = flow * (1.0 - beta)
    x = dist.support_low
    for _ in range(max_iter):
        nxt = base + beta * upsilon(dist, x)
        if abs(nxt - x) < tol:
            return nxt
        x = nxt
    raise NonConvergenceError(
        f"basic fixed point did not converge in {max_iter} iterations",
        residual=abs(base + beta * upsilon(dist, x) - x),
    )


def build_basic_schedule(dist: OfferDistribution, params: MarketParams, horizon,
                         tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER) -> np.ndarray:
    """Post-extension reservation wages for entitlements 0..horizon.

    Entry ``n`` solves
    ``w[n] = (z + c) * (1 - beta) + beta * upsilon(w[n - 1])``
    upward from the zero-entitlement fixed point.
    """
    wages = np.empty(horizon + 1)
    wages[0] = solve_w0_basic(dist, params, params.z, tol=tol, max_iter=max_iter)
    base = (params.z + params.c) * (1.0 - params.beta)
    for n in range(1, horizon + 1):
        wages[n] = base + params.beta * upsilon(dist, wages[n - 1])
    return wages


def solve_w0_extension(dist: OfferDistribution, params: MarketParams,
                       belief: ExtensionSpec, w_basic_at_length,
                       tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER) -> float:
    """Zero-entitlement reservation wage when an extension is still possible.

    ``w_basic_at_length`` is the post-extension wage at entitlement equal
    to the believed extension length. The fixed point solved is
    ``x -> z * (1 - beta) + beta * delta * upsilon(w_basic_at_length)
    + beta * (1 - delta) * upsilon(x)``. Both ``delta = 0`` and
    ``delta = 1`` run through this same path (at 1 the map is constant
    and converges in one step).
    """
    beta, delta = params.beta, belief.delta
    _check_solvable(dist, beta, params.z)
    base = params.z * (1.0 - beta) + beta * delta * upsilon(dist, w_basic_at_length)
    x = dist.support_low
    for _ in range(max_iter):
        nxt = base + beta * (1.0 - delta) * upsilon(dist, x)
        if abs(nxt - x) < tol:
            return nxt
        x = nxt
    raise NonConvergenceError(
        f"extension fixed point did not converge in {max_iter} iterations",
        residual=abs(base + beta * (1.0 - delta) * upsilon(dist, x) - x),
    )


def build_extension_schedule(dist: OfferDistribution, params: MarketParams,
                             belief: ExtensionSpec, basic: np.ndarray,
                             tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER) -> np.ndarray:
    """Pre-extension reservation wages for entitlements 0..n_periods.

    Entry ``n`` solves
    ``w[n] = (z + c) * (1 - beta)
    + beta * delta * upsilon(basic[n - 1 + length])
    + beta * (1 - delta) * upsilon(w[n - 1])``,
    so ``basic`` must cover index ``n_periods - 1 + length``.
    """
    n_periods, length = params.n_periods, belief.length
    needed = max(n_periods - 1, 0) + length
    if len(basic) <= needed:
        raise ValueError(
            f"basic schedule covers 0..{len(basic) - 1} but index {needed} is needed"
        )
    wages = np.empty(n_periods + 1)
    wages[0] = solve_w0_extension(dist, params, belief, basic[length],
                                  tol=tol, max_iter=max_iter)
    beta, delta = params.beta, belief.delta
    base = (params.z + params.c) * (1.0 - beta)
    for n in range(1, n_periods + 1):
        wages[n] = (base
                    + beta * delta * upsilon(dist, basic[n - 1 + length])
                    + beta * (1.0 - delta) * upsilon(dist, wages[n - 1]))
    return wages


@dataclass(frozen=True, eq=False)
class ReservationSchedule:
    """Solved reservation wages for one parameterization.

    ``basic[n]`` is the wage with ``n`` periods of entitlement after the
    extension question is settled; ``with_extension[n]`` is the wage
    while an extension is still possible (None when no belief was
    given). Arrays are read-only, so instances are safe to share across
    threads.
    """

    basic: np.ndarray
    with_extension: np.ndarray | None
    params: MarketParams
    belief: ExtensionSpec | None
    tol: float

    def __post_init__(self):
        self.basic.flags.writeable = False
        if self.with_extension is not None:
            self.with_extension.flags.writeable = False

    def job_value(self, w):
        """Present value of holding a job at wage w forever."""
        return w / (1.0 - self.params.beta)

    def unemployment_value(self, n):
        """Value of unemployment at entitlement n, extension settled."""
        return self.basic[n] / (1.0 - self.params.beta)

    def unemployment_value_pre(self, n):
        """Value of unemployment at entitlement n, extension possible."""
        return self.with_extension[n] / (1.0 - self.params.beta)


def solve_schedules(dist: OfferDistribution, params: MarketParams,
                    belief: ExtensionSpec | None = None,
                    tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER,
                    horizon=None) -> ReservationSchedule:
    """Solve both schedules for one parameterization.

    ``horizon`` sets the top entitlement of the basic schedule. The
    default covers every index the pre-extension recursion looks up,
    ``max(n_periods - 1, 0) + length``; pass a larger value when the
    basic schedule must also cover a different true extension length.
    """
    if horizon is None:
        if belief is None:
            horizon = params.n_periods
        else:
            horizon = max(params.n_periods - 1, 0) + belief.length
    basic = build_basic_schedule(dist, params, horizon, tol=tol, max_iter=max_iter)
    with_ext = None
    if belief is not None:
        with_ext = build_extension_schedule(dist, params, belief, basic,
                                            tol=tol, max_iter=max_iter)
    return ReservationSchedule(basic=basic, with_extension=with_ext,
                               params=params, belief=belief, tol=tol)


def reservation_identity_residual(dist: OfferDistribution,
                                  schedule: ReservationSchedule) -> float:
    """Largest gap in the search cost/benefit identity across the schedule.

    At every entitlement the reservation wage equates the cost of one
    more search period with its expected benefit: with x the wage at
    entitlement n,

    ``x - flow = (beta / (1 - beta)) * (delta * (upsilon(y) - x)
    + (1 - delta) * (upsilon(u) - x))``

    where flow is ``z`` at n = 0 and ``z + c`` above, y is the
    post-extension wage the extension would lead to, and u is the wage
    one entitlement down (x itself at n = 0). For a schedule solved
    without a belief the same identity applies with delta = 0. A solved
    schedule satisfies this to solver precision; the residual is a
    cheap independence check on the fixed-point algebra.
    """
    params = schedule.params
    beta = params.beta
    per_period = beta / (1.0 - beta)

    if schedule.with_extension is None:
        delta, length = 0.0, 0
        wages = schedule.basic
        post = schedule.basic
    else:
        delta, length = schedule.belief.delta, schedule.belief.length
        wages = schedule.with_extension
        post = schedule.basic

    worst = 0.0
    for n in range(len(wages)):
        x = wages[n]
        flow = params.z if n == 0 else params.z + params.c
        u = x if n == 0 else wages[n - 1]
        y = post[max(n - 1, 0) + length] if schedule.with_extension is not None else u
        lhs = x - flow
        rhs = per_period * (delta * (upsilon(dist, y) - x)
                            + (1.0 - delta) * (upsilon(dist, u) - x))
        worst = max(worst, abs(lhs - rhs))
    return worst
