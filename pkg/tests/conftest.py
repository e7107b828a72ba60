import numpy as np
import pytest

from uisearch import ExtensionSpec, MarketParams, UniformOffers


@pytest.fixture(scope="session")
def uniform():
    return UniformOffers()


@pytest.fixture(scope="session")
def fig3_params():
    """Parameters behind the schedule-shape illustration."""
    return MarketParams(beta=0.95, z=0.42, c=0.42, n_periods=10)


@pytest.fixture(scope="session")
def benchmark_params():
    """Duration-10 benchmark: nonwork value 0.805 split half-and-half."""
    return MarketParams(beta=0.95, z=0.4025, c=0.4025, n_periods=10)


@pytest.fixture(scope="session")
def benchmark_truth():
    return ExtensionSpec(delta=0.5, length=25)


def random_valid_params(rng: np.random.Generator):
    """Draw parameters satisfying every solver assumption (uniform offers).

    Ranges also keep the schedule's analytic increments above float64
    resolution over the tested horizons: increments shrink like
    ``(beta * F)^n``, and once they fall below machine epsilon strict
    inequality of stored values is not decidable.
    """
    beta = rng.uniform(0.85, 0.99)
    z = rng.uniform(0.1, 0.6)
    c = rng.uniform(0.05, min(0.95 - z, 0.5))
    n_periods = int(rng.integers(1, 13))
    return MarketParams(beta=beta, z=z, c=c, n_periods=n_periods)


def random_belief(rng: np.random.Generator):
    return ExtensionSpec(delta=float(rng.uniform(0.0, 1.0)),
                         length=int(rng.integers(1, 21)))


def assert_dominance(dist, params, belief, schedule):
    """Post-extension wages dominate pre-extension wages at shifted states.

    The gap contracts each step with modulus ``beta (1 - delta) F``, so
    for beliefs near certainty it falls below float64 resolution at deep
    entitlements (at certainty the two sequences coincide exactly).
    Strictness is asserted wherever the analytic lower bound on the gap
    is comfortably representable; float ties are tolerated below that.
    """
    states = np.arange(params.n_periods + 1) + belief.length
    gaps = schedule.basic[states] - schedule.with_extension
    assert gaps[0] > 0.0
    modulus = (params.beta * (1.0 - belief.delta)
               * dist.cdf(schedule.with_extension[0]))
    floor = gaps[0] * modulus ** np.arange(params.n_periods + 1)
    assert np.all(gaps[floor > 1e-10] > 0.0)
    assert np.all(gaps > -1e-10)
