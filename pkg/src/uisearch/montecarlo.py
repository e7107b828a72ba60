"""Seeded, reproducible Monte Carlo simulation of unemployment spells.

Randomness comes from a counter-based scheme so that results never
depend on worker count or scheduling: uniform variate ``j`` of spell
``i`` is a pure function of ``(master_seed, i, j)``. Concretely, the
64-bit counter ``(i << 32) | j`` indexes a splitmix64 sequence offset by
a mix of the master seed, and the mixed output is mapped to [0, 1).
Each spell consumes one variate per extension trial (only while an
extension is still possible) and one per wage offer, in that order
within a period.

Spells are simulated either one at a time (``simulate_spell``, which
also accepts hand-built variate streams for tracing) or in vectorized
blocks (``simulate_block``); the two paths consume identical streams
and produce identical records. ``simulate_many`` aggregates blocks with
an exact (order-insensitive) reduction, so a fixed
``(master_seed, n_spells)`` gives a bit-identical summary for any
worker count or chunk size.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .distributions import OfferDistribution
from .params import ExtensionSpec, MarketParams

DEFAULT_MAX_PERIODS = 2_000
DEFAULT_CHUNK = 65_536

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _mix64(x: int) -> int:
    """splitmix64 finalizer on a Python int."""
    x &= _MASK64
    x = ((x ^ (x >> 30)) * _MIX1) & _MASK64
    x = ((x ^ (x >> 27)) * _MIX2) & _MASK64
    return x ^ (x >> 31)


def _seed_offset(master_seed: int) -> int:
    return _mix64(master_seed & _MASK64)


def _variate(seed_offset: int, spell: int, draw: int) -> float:
    """Uniform variate in [0, 1) for draw ``draw`` of spell ``spell``."""
    counter = (spell << 32) | draw
    state = (seed_offset + (counter + 1) * _GAMMA) & _MASK64
    return (_mix64(state) >> 11) * 2.0 ** -53


def _variates(seed_offset, spells: np.ndarray, draws: np.ndarray) -> np.ndarray:
    """Vectorized ``_variate`` over uint64 index arrays."""
    counter = (spells << np.uint64(32)) | draws
    state = np.uint64(seed_offset) + (counter + np.uint64(1)) * np.uint64(_GAMMA)
    x = state ^ (state >> np.uint64(30))
    x = x * np.uint64(_MIX1)
    x = x ^ (x >> np.uint64(27))
    x = x * np.uint64(_MIX2)
    x = x ^ (x >> np.uint64(31))
    return (x >> np.uint64(11)) * 2.0 ** -53


class CounterStream:
    """Per-spell uniform stream derived from ``(master_seed, index)``."""

    def __init__(self, master_seed: int, index: int):
        self._offset = _seed_offset(master_seed)
        self._spell = index
        self._draw = 0

    def _next(self) -> float:
        u = _variate(self._offset, self._spell, self._draw)
        self._draw += 1
        return u

    def next_extension(self, delta) -> bool:
        """One extension trial: True with probability ``delta``."""
        return self._next() < delta

    def next_offer(self, dist: OfferDistribution) -> float:
        """One wage offer by inverse-CDF sampling."""
        return float(dist.quantile(self._next()))


@dataclass(frozen=True)
class SpellRecord:
    """One simulated unemployment spell.

    ``duration`` counts offers received up to and including the accepted
    one (``max_periods`` when truncated). ``extension_period`` is the
    1-based offer index at which the extension first applied, or None.
    ``accepted_wage`` is None when the spell was truncated.
    """

    duration: int
    accepted_wage: float | None
    welfare: float
    extended: bool
    extension_period: int | None
    truncated: bool


def simulate_spell(policy, truth: ExtensionSpec, params: MarketParams,
                   dist: OfferDistribution, stream,
                   max_periods=DEFAULT_MAX_PERIODS) -> SpellRecord:
    """Simulate one spell under (belief policy, true process).

    Each period: collect the flow (nonwork plus compensation while
    entitled), resolve the extension trial if still pending (entitlement
    jumps to ``max(n - 1, 0) + length`` on success, so an extension at
    zero entitlement restores the full extension length), then draw an
    offer and compare it against the threshold at the new state. The
    spell truncates after ``max_periods`` offers.
    """
    z, c, beta = params.z, params.c, params.beta
    n = params.n_periods
    extended = False
    extension_period = None
    welfare = 0.0
    disc = 1.0
    for t in range(max_periods):
        welfare += disc * (z + (c if n > 0 else 0.0))
        n = max(n - 1, 0)
        if not extended and stream.next_extension(truth.delta):
            extended = True
            n += truth.length
            extension_period = t + 1
        disc *= beta
        w = stream.next_offer(dist)
        threshold = (policy.post_thresholds[n] if extended
                     else policy.pre_thresholds[n])
        if w >= threshold:
            welfare += disc * w / (1.0 - beta)
            return SpellRecord(duration=t + 1, accepted_wage=w, welfare=welfare,
                               extended=extended, extension_period=extension_period,
                               truncated=False)
    return SpellRecord(duration=max_periods, accepted_wage=None, welfare=welfare,
                       extended=extended, extension_period=extension_period,
                       truncated=True)


def simulate_block(policy, truth: ExtensionSpec, params: MarketParams,
                   dist: OfferDistribution, master_seed: int,
                   start: int, count: int,
                   max_periods=DEFAULT_MAX_PERIODS) -> dict:
    """Simulate spells ``start .. start + count - 1`` vectorized.

    Consumes exactly the streams ``CounterStream(master_seed, i)`` would,
    so results are independent of how spells are grouped into blocks.
    Returns arrays keyed ``duration``, ``accepted_wage`` (NaN when
    truncated), ``welfare``, ``extended``, ``extension_period`` (-1 when
    none), and ``truncated``.
    """
    if start + count > 1 << 32:
        raise ValueError("spell indices must fit in 32 bits")
    if max_periods > 1 << 30:
        raise ValueError("max_periods too large for the draw counter")
    z, c, beta = params.z, params.c, params.beta
    delta, length = truth.delta, truth.length
    pre = policy.pre_thresholds
    post = policy.post_thresholds
    offset = _seed_offset(master_seed)

    duration = np.zeros(count, dtype=np.int64)
    wage = np.full(count, np.nan)
    welfare = np.zeros(count)
    extended_out = np.zeros(count, dtype=bool)
    ext_period = np.full(count, -1, dtype=np.int64)
    truncated = np.zeros(count, dtype=bool)

    # Working arrays over the still-active lanes, compacted as spells end.
    a_orig = np.arange(count)
    a_idx = np.arange(start, start + count, dtype=np.uint64)
    a_cnt = np.zeros(count, dtype=np.uint64)
    a_n = np.full(count, params.n_periods, dtype=np.int64)
    a_ext = np.zeros(count, dtype=bool)
    a_disc = np.ones(count)
    a_wel = np.zeros(count)

    for t in range(max_periods):
        flow = z + c * (a_n > 0)
        a_wel += a_disc * flow
        a_n = np.maximum(a_n - 1, 0)
        pending = ~a_ext
        if pending.any():
            pos = np.flatnonzero(pending)
            u_ext = _variates(offset, a_idx[pos], a_cnt[pos])
            a_cnt[pos] += np.uint64(1)
            won = pos[u_ext < delta]
            if won.size:
                a_n[won] += length
                a_ext[won] = True
                ext_period[a_orig[won]] = t + 1
                extended_out[a_orig[won]] = True
        a_disc *= beta
        u_off = _variates(offset, a_idx, a_cnt)
        a_cnt += np.uint64(1)
        w = dist.quantile(u_off)
        threshold = np.empty(w.shape)
        threshold[a_ext] = post[a_n[a_ext]]
        threshold[~a_ext] = pre[a_n[~a_ext]]
        accept = w >= threshold
        if accept.any():
            done = a_orig[accept]
            welfare[done] = a_wel[accept] + a_disc[accept] * w[accept] / (1.0 - beta)
            duration[done] = t + 1
            wage[done] = w[accept]
            keep = ~accept
            a_orig = a_orig[keep]
            a_idx = a_idx[keep]
            a_cnt = a_cnt[keep]
            a_n = a_n[keep]
            a_ext = a_ext[keep]
            a_disc = a_disc[keep]
            a_wel = a_wel[keep]
            if a_orig.size == 0:
                break

    if a_orig.size:
        welfare[a_orig] = a_wel
        duration[a_orig] = max_periods
        truncated[a_orig] = True

    return {
        "duration": duration,
        "accepted_wage": wage,
        "welfare": welfare,
        "extended": extended_out,
        "extension_period": ext_period,
        "truncated": truncated,
    }


@dataclass(frozen=True)
class SimulationSummary:
    """Aggregate statistics over a batch of simulated spells.

    Means and standard errors cover completed (non-truncated) spells;
    extension and truncation tallies are raw counts over all spells.
    """

    n_spells: int
    welfare_mean: float
    welfare_stderr: float
    duration_mean: float
    duration_stderr: float
    wage_mean: float
    wage_stderr: float
    extension_count: int
    truncated_count: int

    @property
    def extension_frequency(self) -> float:
        return self.extension_count / self.n_spells


def _block_partials(block: dict) -> tuple:
    done = ~block["truncated"]
    w = block["welfare"][done]
    d = block["duration"][done].astype(float)
    a = block["accepted_wage"][done]
    return (
        int(done.sum()),
        float(np.sum(w)), float(np.sum(w * w)),
        float(np.sum(d)), float(np.sum(d * d)),
        float(np.sum(a)), float(np.sum(a * a)),
        int(block["extended"].sum()),
        int(block["truncated"].sum()),
    )


def _mean_stderr(total, total_sq, n):
    if n == 0:
        return math.nan, math.nan
    mean = total / n
    if n == 1:
        return mean, math.nan
    var = max(total_sq - n * mean * mean, 0.0) / (n - 1)
    return mean, math.sqrt(var / n)


def simulate_many(policy, truth: ExtensionSpec, params: MarketParams,
                  dist: OfferDistribution, n_spells: int, master_seed: int,
                  max_periods=DEFAULT_MAX_PERIODS, n_workers=1,
                  chunk_size=DEFAULT_CHUNK) -> SimulationSummary:
    """Simulate ``n_spells`` spells and summarize them.

    Spell ``i`` always uses the stream derived from
    ``(master_seed, i)``, and cross-chunk totals are combined with exact
    summation, so the summary is bit-identical for a given
    ``(master_seed, n_spells)`` regardless of ``n_workers`` or
    ``chunk_size``.
    """
    if n_spells < 1:
        raise ValueError("n_spells must be at least 1")
    starts = list(range(0, n_spells, chunk_size))

    def run(start):
        count = min(chunk_size, n_spells - start)
        return _block_partials(simulate_block(
            policy, truth, params, dist, master_seed, start, count,
            max_periods=max_periods))

    if n_workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            partials = list(pool.map(run, starts))
    else:
        partials = [run(s) for s in starts]

    n_done = sum(p[0] for p in partials)
    sums = [math.fsum(p[k] for p in partials) for k in range(1, 7)]
    welfare_mean, welfare_stderr = _mean_stderr(sums[0], sums[1], n_done)
    duration_mean, duration_stderr = _mean_stderr(sums[2], sums[3], n_done)
    wage_mean, wage_stderr = _mean_stderr(sums[4], sums[5], n_done)
    return SimulationSummary(
        n_spells=n_spells,
        welfare_mean=welfare_mean, welfare_stderr=welfare_stderr,
        duration_mean=duration_mean, duration_stderr=duration_stderr,
        wage_mean=wage_mean, wage_stderr=wage_stderr,
        extension_count=sum(p[7] for p in partials),
        truncated_count=sum(p[8] for p in partials),
    )
