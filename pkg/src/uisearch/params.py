"""Market parameters and extension beliefs.

The same ``ExtensionSpec`` shape describes both the true extension
process and a worker's (possibly wrong) belief about it; which role an
instance plays is decided by where it is passed.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class MarketParams:
    """Per-period environment of the search problem.

    Parameters
    ----------
    beta : float
        Discount factor. Economically meaningful values lie in (0, 1);
        out-of-range values are representable so that
        ``validate_assumptions`` can report them as violations.
    z : float
        Flow value of nonwork (leisure and home production), received
        every period while unemployed.
    c : float
        Unemployment-insurance compensation, received per period while
        entitlement remains.
    n_periods : int
        Initial entitlement: periods of compensation the worker may
        claim. Zero is legal (benefits already exhausted).
    """

    beta: float
    z: float
    c: float
    n_periods: int

    def __post_init__(self):
        if int(self.n_periods) != self.n_periods or self.n_periods < 0:
            raise ValueError("n_periods must be a nonnegative integer")
        object.__setattr__(self, "n_periods", int(self.n_periods))

    @property
    def interest_rate(self):
        """Implied per-period interest rate, 1/beta - 1."""
        return 1.0 / self.beta - 1.0


@dataclass(frozen=True)
class ExtensionSpec:
    """A one-time benefit extension: per-period probability and length.

    Parameters
    ----------
    delta : float
        Probability, each period before the extension has occurred, that
        entitlement is extended. Must lie in [0, 1]; both endpoints are
        accepted and handled by the general solver path.
    length : int
        Periods of entitlement the extension adds. At least 1.
    """

    delta: float
    length: int

    def __post_init__(self):
        if not 0.0 <= self.delta <= 1.0:
            raise ValueError("delta must lie in [0, 1]")
        if int(self.length) != self.length or self.length < 1:
            raise ValueError("length must be a positive integer")
        object.__setattr__(self, "length", int(self.length))
