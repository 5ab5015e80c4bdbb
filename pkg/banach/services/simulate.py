"""Seeded Monte Carlo simulation of the two-matchbox process.

Coin flips come from splitmix64, one bit at a time, most significant bit of
each output first; bit 1 picks the first box. Trial t owns the fixed window of
2n+1 flips starting at flip t·(2n+1), which bounds any trial's consumption, so
counts depend only on (n, trials, seed). :func:`run_trial` consumes the stream
flip by flip; :func:`run` evaluates the same windows with numpy.
"""

import logging
import time
from fractions import Fraction

import numpy as np
from scipy.stats import chi2

from banach.core.config import settings
from banach.core.exceptions import ArgumentError
from banach.models.report_models import SimulationResult
from banach.services.matchbox import distribution

__all__ = [
    "CoinStream",
    "SplitMix64",
    "chi_square_pooled",
    "reference_counts",
    "run",
    "run_trial",
    "splitmix64_block",
    "trial_window",
]

logger = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """Reference scalar splitmix64 generator."""

    def __init__(self, seed: int) -> None:
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + GAMMA) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * MIX1) & MASK64
        z = ((z ^ (z >> 27)) * MIX2) & MASK64
        return z ^ (z >> 31)


class CoinStream:
    """Fair coin flips drawn bit by bit from splitmix64 outputs, high bit first."""

    def __init__(self, seed: int) -> None:
        self._gen = SplitMix64(seed)
        self._word = 0
        self._bits_left = 0
        self.consumed = 0

    def flip(self) -> int:
        if self._bits_left == 0:
            self._word = self._gen.next_u64()
            self._bits_left = 64
        self._bits_left -= 1
        self.consumed += 1
        return (self._word >> self._bits_left) & 1

    def skip(self, count: int) -> None:
        for _ in range(count):
            self.flip()


def splitmix64_block(seed: int, start: int, count: int) -> np.ndarray:
    """Outputs start..start+count−1 (0-based) of splitmix64, vectorized.

    The generator is counter based: output i mixes seed + (i+1)·GAMMA, and
    uint64 array arithmetic wraps mod 2^64.
    """
    counters = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    z = counters * np.uint64(GAMMA) + np.uint64(seed & MASK64)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX2)
    return z ^ (z >> np.uint64(31))


def trial_window(n: int) -> int:
    """Flips reserved per trial: at most 2n removals plus the terminal empty pick."""
    return 2 * n + 1


def run_trial(n: int, rng: CoinStream) -> int:
    """Play one round; return the matches left in the other box when an empty box is picked."""
    if n < 0:
        raise ArgumentError(f"Box size must be nonnegative, got n={n}")
    first = second = n
    while True:
        if rng.flip():
            if first == 0:
                return second
            first -= 1
        else:
            if second == 0:
                return first
            second -= 1


def reference_counts(n: int, trials: int, seed: int) -> list[int]:
    """Counts from the scalar stream, honouring the per-trial flip windows."""
    rng = CoinStream(seed)
    counts = [0] * (n + 1)
    window = trial_window(n)
    for t in range(trials):
        counts[run_trial(n, rng)] += 1
        rng.skip((t + 1) * window - rng.consumed)
    return counts


def _block_counts(n: int, seed: int, t0: int, t1: int) -> np.ndarray:
    """Outcome counts for trials t0..t1−1."""
    window = trial_window(n)
    b0, b1 = t0 * window, t1 * window
    w0, w1 = b0 // 64, -(-b1 // 64)
    words = splitmix64_block(seed, w0, w1 - w0)
    bits = np.unpackbits(words.astype(">u8").view(np.uint8))
    flips = bits[b0 - 64 * w0 : b1 - 64 * w0].reshape(t1 - t0, window)

    first_picks = np.cumsum(flips, axis=1, dtype=np.int32)
    second_picks = np.arange(1, window + 1, dtype=np.int32) - first_picks
    # A box is found empty on its (n+1)-th pick; 2n+1 flips always reach it.
    hit = (first_picks == n + 1) | (second_picks == n + 1)
    stop = np.argmax(hit, axis=1)
    rows = np.arange(t1 - t0)
    first_at = first_picks[rows, stop]
    second_at = second_picks[rows, stop]
    outcome = np.where(first_at == n + 1, n - second_at, n - first_at)
    return np.bincount(outcome, minlength=n + 1)


def chi_square_pooled(counts: np.ndarray, expected: np.ndarray, min_expected: float) -> tuple[float, int]:
    """Chi-square statistic after pooling categories left to right until each bucket expects ≥ min_expected.

    A trailing under-threshold remainder joins the last bucket. Returns (statistic, df).
    """
    obs_buckets: list[float] = []
    exp_buckets: list[float] = []
    obs_acc = exp_acc = 0.0
    for obs, exp in zip(counts.tolist(), expected.tolist(), strict=True):
        obs_acc += obs
        exp_acc += exp
        if exp_acc >= min_expected:
            obs_buckets.append(obs_acc)
            exp_buckets.append(exp_acc)
            obs_acc = exp_acc = 0.0
    if exp_acc > 0.0 or obs_acc > 0.0:
        if exp_buckets:
            obs_buckets[-1] += obs_acc
            exp_buckets[-1] += exp_acc
        else:
            obs_buckets.append(obs_acc)
            exp_buckets.append(exp_acc)
    o = np.asarray(obs_buckets)
    e = np.asarray(exp_buckets)
    statistic = float(np.sum((o - e) ** 2 / e)) if len(e) > 1 else 0.0
    return statistic, len(e) - 1


def run(n: int, trials: int, seed: int) -> SimulationResult:
    """Simulate `trials` rounds and compare them with the exact distribution."""
    if n < 0:
        raise ArgumentError(f"Box size must be nonnegative, got n={n}")
    if trials < 1:
        raise ArgumentError(f"trials must be positive, got {trials}")
    if not 0 <= seed <= MASK64:
        raise ArgumentError(f"seed must be a 64-bit unsigned value, got {seed}")

    start = time.perf_counter()
    chunk = max(1, settings.simulation_chunk_bits // trial_window(n))
    counts = np.zeros(n + 1, dtype=np.int64)
    for t0 in range(0, trials, chunk):
        counts += _block_counts(n, seed, t0, min(trials, t0 + chunk))

    exact: tuple[Fraction, ...] = distribution(n).probs
    probs = np.array([float(u) for u in exact])
    tv = min(1.0, 0.5 * float(np.abs(counts / trials - probs).sum()))
    statistic, df = chi_square_pooled(counts, trials * probs, settings.chi_square_min_expected)
    p_value = float(chi2.sf(statistic, df)) if df > 0 else 1.0

    logger.info("Simulated n=%d trials=%d seed=%d in %.2fs (tv=%.5f)", n, trials, seed, time.perf_counter() - start, tv)
    return SimulationResult(
        n=n,
        trials=trials,
        seed=seed,
        counts=[int(c) for c in counts],
        tv_distance=tv,
        chi_square=statistic,
        chi2_df=df,
        p_value=p_value,
    )
