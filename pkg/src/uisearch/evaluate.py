"""Exact evaluation of a threshold policy under the true extension process.

The worker follows thresholds computed from a belief about extensions
while the actual extension draw follows the true process. Expected
discounted welfare, expected offers until acceptance, and the expected
accepted wage all satisfy linear one-step recursions over the
entitlement state, so they can be computed exactly instead of by brute
Monte Carlo. The timing convention matches the simulator: the spell
starts at a flow node with full entitlement, and the first offer
arrives the following period.
"""

from dataclasses import dataclass

import numpy as np

from .distributions import OfferDistribution
from .errors import DivergenceError
from .params import ExtensionSpec, MarketParams
from .schedule import (DEFAULT_MAX_ITER, DEFAULT_TOL, build_basic_schedule,
                       build_extension_schedule, upsilon)


@dataclass(frozen=True, eq=False)
class PolicyProfile:
    """Acceptance thresholds the worker actually uses.

    ``pre_thresholds[n]`` applies while an extension is still possible
    (computed from the worker's belief); ``post_thresholds[n]`` applies
    once the extension question is settled. Post-extension behavior is
    belief-free, so ``post_thresholds`` is always the basic schedule.
    """

    pre_thresholds: np.ndarray
    post_thresholds: np.ndarray

    def __post_init__(self):
        self.pre_thresholds.flags.writeable = False
        self.post_thresholds.flags.writeable = False


def build_policy(dist: OfferDistribution, params: MarketParams,
                 belief: ExtensionSpec, true_length=None,
                 tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER) -> PolicyProfile:
    """Solve the thresholds a worker holding ``belief`` would use.

    ``true_length`` extends the post-extension schedule far enough to
    index the states a true extension of that length can reach; it
    defaults to the believed length.
    """
    if true_length is None:
        true_length = belief.length
    horizon = max(params.n_periods - 1, 0) + max(belief.length, true_length)
    basic = build_basic_schedule(dist, params, horizon, tol=tol, max_iter=max_iter)
    pre = build_extension_schedule(dist, params, belief, basic,
                                   tol=tol, max_iter=max_iter)
    return PolicyProfile(pre_thresholds=pre, post_thresholds=basic)


def value_post_extension(dist: OfferDistribution, params: MarketParams,
                         basic: np.ndarray, n) -> float:
    """Continuation value of unemployment at entitlement n after extension.

    Post-extension behavior is optimal, so this is the Bellman value
    ``basic[n] / (1 - beta)``.
    """
    return basic[n] / (1.0 - params.beta)


def offer_value_post_extension(dist: OfferDistribution, params: MarketParams,
                               basic: np.ndarray, n) -> float:
    """Expected value at a post-extension offer node with entitlement n.

    The offer is compared against ``basic[n]``, so the node is worth
    ``upsilon(basic[n]) / (1 - beta)``.
    """
    return upsilon(dist, basic[n]) / (1.0 - params.beta)


@dataclass(frozen=True, eq=False)
class PolicyEvaluation:
    """Exact spell statistics for one (policy, true process) pair.

    ``welfare``, ``duration``, and ``accepted_wage`` are the ex-ante
    expectations at spell start (full entitlement). The arrays hold the
    same expectations started from each pre-extension entitlement, and
    ``offer_values`` the expected value at each pre-extension offer
    node.
    """

    welfare: float
    duration: float
    accepted_wage: float
    values: np.ndarray
    durations: np.ndarray
    wages: np.ndarray
    offer_values: np.ndarray


def evaluate_policy(policy: PolicyProfile, truth: ExtensionSpec,
                    params: MarketParams, dist: OfferDistribution) -> PolicyEvaluation:
    """Expected welfare, duration, and accepted wage under the true process.

    Solves the post-extension chains first (their values are optimal
    Bellman quantities), then the pre-extension recursions upward from
    entitlement 0, whose equation is self-referencing and is solved in
    closed form as one linear equation.
    """
    beta, z, c = params.beta, params.z, params.c
    n_periods = params.n_periods
    delta, length = truth.delta, truth.length
    pre = policy.pre_thresholds
    post = policy.post_thresholds
    hi = dist.support_high

    if len(pre) != n_periods + 1:
        raise ValueError("pre_thresholds must cover entitlements 0..n_periods")
    top_post = max(n_periods - 1, 0) + length
    if len(post) <= top_post:
        raise ValueError(
            f"post_thresholds cover 0..{len(post) - 1} but index {top_post} is needed"
        )

    accept0_post = 1.0 - dist.cdf(post[0])
    accept0_pre_stuck = 1.0 - (1.0 - delta) * dist.cdf(pre[0])
    if delta > 0.0 and accept0_post <= 0.0:
        raise DivergenceError("post-extension state 0 never accepts; duration diverges")
    if accept0_pre_stuck <= 0.0:
        raise DivergenceError("pre-extension state 0 never accepts; duration diverges")

    # Post-extension chains over offer-node entitlements 0..top_post.
    m_max = len(post) - 1
    g_post = np.array([upsilon(dist, post[m]) for m in range(m_max + 1)]) / (1.0 - beta)
    d_post = np.empty(m_max + 1)
    a_post = np.empty(m_max + 1)
    if accept0_post > 0.0:
        d_post[0] = 1.0 / accept0_post
        a_post[0] = dist.partial_expectation(post[0], hi) / accept0_post
    else:
        # Only legal when delta = 0; the post side is then unreachable
        # and the zeros keep delta-weighted terms finite.
        d_post[0] = 0.0
        a_post[0] = 0.0
    for m in range(1, m_max + 1):
        reject = dist.cdf(post[m])
        d_post[m] = 1.0 + reject * d_post[m - 1]
        a_post[m] = dist.partial_expectation(post[m], hi) + reject * a_post[m - 1]

    # Pre-extension flow-node recursions. At entitlement 0 the state
    # persists until extension or acceptance, so the equation contains
    # its own unknown and is solved linearly.
    values = np.empty(n_periods + 1)
    durations = np.empty(n_periods + 1)
    wages = np.empty(n_periods + 1)

    f0 = dist.cdf(pre[0])
    tail0 = dist.partial_expectation(pre[0], hi)
    values[0] = (z + beta * delta * g_post[length]
                 + beta * (1.0 - delta) * tail0 / (1.0 - beta)) / (
                     1.0 - beta * (1.0 - delta) * f0)
    durations[0] = (delta * d_post[length] + (1.0 - delta)) / accept0_pre_stuck
    wages[0] = (delta * a_post[length] + (1.0 - delta) * tail0) / accept0_pre_stuck

    for n in range(1, n_periods + 1):
        k = n - 1
        m = n - 1 + length
        reject = dist.cdf(pre[k])
        tail = dist.partial_expectation(pre[k], hi)
        g_pre = reject * values[k] + tail / (1.0 - beta)
        values[n] = z + c + beta * (delta * g_post[m] + (1.0 - delta) * g_pre)
        durations[n] = delta * d_post[m] + (1.0 - delta) * (1.0 + reject * durations[k])
        wages[n] = delta * a_post[m] + (1.0 - delta) * (tail + reject * wages[k])

    offer_values = np.array([
        dist.cdf(pre[m]) * values[m]
        + dist.partial_expectation(pre[m], hi) / (1.0 - beta)
        for m in range(n_periods + 1)
    ])

    return PolicyEvaluation(
        welfare=values[n_periods],
        duration=durations[n_periods],
        accepted_wage=wages[n_periods],
        values=values,
        durations=durations,
        wages=wages,
        offer_values=offer_values,
    )


def welfare_loss(belief: ExtensionSpec, truth: ExtensionSpec,
                 params: MarketParams, dist: OfferDistribution,
                 tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER) -> float:
    """Percent welfare lost to holding ``belief`` instead of the truth.

    Both policies are evaluated under the same true process; the
    true-belief policy is optimal, so the loss is nonnegative up to
    solver precision and zero when belief equals truth.
    """
    policy_b = build_policy(dist, params, belief, true_length=truth.length,
                            tol=tol, max_iter=max_iter)
    policy_t = build_policy(dist, params, truth, true_length=truth.length,
                            tol=tol, max_iter=max_iter)
    j_belief = evaluate_policy(policy_b, truth, params, dist).welfare
    j_truth = evaluate_policy(policy_t, truth, params, dist).welfare
    return 100.0 * (j_truth - j_belief) / j_truth
