"""Wage-offer distributions and the analytic operations the solver needs.

Every distribution exposes the CDF, the partial expectation
``int_a^b w dF(w)``, and the quantile function used for inverse-CDF
sampling. Instances are immutable after construction and safe to share
across threads.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from .params import MarketParams


class OfferDistribution(ABC):
    """Continuous wage-offer distribution on a bounded support."""

    @property
    @abstractmethod
    def support_low(self) -> float:
        """Lower end of the wage support."""

    @property
    @abstractmethod
    def support_high(self) -> float:
        """Upper end of the wage support."""

    @property
    @abstractmethod
    def mean(self) -> float:
        """Mean wage offer."""

    @abstractmethod
    def cdf(self, x):
        """P(w <= x). Clamps to 0 below the support and 1 above it.

        Accepts scalars or arrays.
        """

    @abstractmethod
    def partial_expectation(self, a, b) -> float:
        """int_a^b w dF(w) for a <= b.

        Additive over adjacent intervals; over the full support it
        equals the mean. Raises ValueError when a > b.
        """

    @abstractmethod
    def quantile(self, u):
        """Inverse CDF at u. Accepts scalars or arrays in [0, 1]."""


@dataclass(frozen=True)
class UniformOffers(OfferDistribution):
    """Uniform wage offers on [low, high]; the default is [0, 1].

    On [0, 1] the CDF is the identity, which makes every fixed point of
    the solver available in closed form (see ``uisearch.closedform``).
    """

    low: float = 0.0
    high: float = 1.0

    def __post_init__(self):
        if not self.low < self.high:
            raise ValueError("low must be strictly less than high")

    @property
    def support_low(self):
        return self.low

    @property
    def support_high(self):
        return self.high

    @property
    def mean(self):
        return 0.5 * (self.low + self.high)

    def cdf(self, x):
        scaled = (np.asarray(x, dtype=float) - self.low) / (self.high - self.low)
        out = np.clip(scaled, 0.0, 1.0)
        return float(out) if np.isscalar(x) or np.ndim(x) == 0 else out

    def partial_expectation(self, a, b):
        if a > b:
            raise ValueError(f"invalid interval: a={a} > b={b}")
        lo = min(max(a, self.low), self.high)
        hi = min(max(b, self.low), self.high)
        # int_lo^hi w/(high-low) dw
        return (hi * hi - lo * lo) / (2.0 * (self.high - self.low))

    def quantile(self, u):
        u = np.asarray(u, dtype=float)
        out = self.low + u * (self.high - self.low)
        return float(out) if np.ndim(out) == 0 else out


def sample_offer(dist: OfferDistribution, u):
    """Draw a wage by inverse-CDF sampling at the uniform variate ``u``.

    Deterministic given ``u``; distributed as F when ``u`` is uniform on
    [0, 1). Raises ValueError for variates outside [0, 1).
    """
    arr = np.asarray(u, dtype=float)
    if np.any(arr < 0.0) or np.any(arr >= 1.0):
        raise ValueError(f"invalid variate: u={u!r} outside [0, 1)")
    return dist.quantile(u)


def validate_assumptions(dist: OfferDistribution, params: MarketParams) -> list[str]:
    """Check the conditions under which the solver's theory holds.

    Returns the list of violated conditions (empty when all pass).
    Violations are data, not exceptions: callers decide whether a
    violation is fatal.
    """
    violations = []
    if not dist.support_low < (1.0 - params.beta) * params.z + params.beta * dist.mean:
        violations.append("w_low < (1 - beta) * z + beta * mean_wage")
    if not params.z > 0.0:
        violations.append("z > 0")
    if not params.z + params.c < dist.support_high:
        violations.append("z + c < w_high")
    if not 0.0 < params.beta < 1.0:
        violations.append("0 < beta < 1")
    if not params.c > 0.0:
        violations.append("c > 0")
    return violations
