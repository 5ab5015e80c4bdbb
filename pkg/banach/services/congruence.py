"""The prime congruence Σ_{i=1}^{p−2k−1} 2^(i−1)·C(k−1+i, k) ≡ 0 (mod p).

Three independent evaluations are provided: an exact big-integer oracle, a
direct kernel over the factorial tables, and an incremental kernel driven by
the term recurrence T_(i+1) = T_i·2·(k+i)/i. The incremental kernel also runs
batched over every k of a prime at once; that form powers verify_prime and the
multi-process sweep.
"""

from __future__ import annotations

import hashlib
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from typing import NamedTuple

import numpy as np

from banach.core.config import settings
from banach.core.exceptions import ArgumentError
from banach.core.exceptions import NotPrimeError
from banach.models.report_models import CompositeSummary
from banach.models.report_models import CongruenceReport
from banach.models.report_models import Method
from banach.models.report_models import SweepReport
from banach.services.exactmath import binomial_exact
from banach.services.modarith import ModContext
from banach.services.modarith import binom_mod
from banach.services.modarith import make_context
from banach.services.modarith import mulmod

__all__ = [
    "composite_scan",
    "congruence_sum",
    "incremental_residues",
    "make_report",
    "prime_mask",
    "primes_in_range",
    "require_prime",
    "smallest_factor",
    "sum_exact",
    "sum_kernel_direct",
    "sum_kernel_incremental",
    "summarize_composites",
    "sweep",
    "term_count",
    "verify_prime",
]

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Argument validation and primality
# ---------------------------------------------------------------------------


def _validate_pair(p: int, k: int) -> None:
    if p < 3 or p % 2 == 0:
        raise ArgumentError(f"Modulus must be an odd integer ≥ 3, got {p}")
    if not 1 <= k <= (p - 1) // 2:
        raise ArgumentError(f"k must lie in [1, {(p - 1) // 2}] for p={p}, got {k}")


def term_count(p: int, k: int) -> int:
    """Number of terms p−2k−1; zero at k = (p−1)/2."""
    return p - 2 * k - 1


def prime_mask(limit: int) -> np.ndarray:
    """Sieve of Eratosthenes: mask[m] is True iff m is prime, for 0 ≤ m ≤ limit."""
    mask = np.ones(max(limit, 1) + 1, dtype=bool)
    mask[:2] = False
    for q in range(2, math.isqrt(limit) + 1):
        if mask[q]:
            mask[q * q :: q] = False
    return mask[: limit + 1]


def primes_in_range(lo: int, hi: int) -> list[int]:
    """Primes in the closed range [lo, hi], ascending."""
    if hi < 2 or hi < lo:
        return []
    mask = prime_mask(hi)
    return [int(q) for q in np.flatnonzero(mask) if q >= lo]


def smallest_factor(n: int) -> int:
    """Smallest prime factor of n ≥ 2 (n itself when n is prime)."""
    if n < 2:
        raise ArgumentError(f"smallest_factor needs n ≥ 2, got {n}")
    if n % 2 == 0:
        return 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return d
    return n


def require_prime(p: int) -> None:
    """Raise NotPrimeError naming the smallest factor unless p is an odd prime."""
    if p < 3:
        raise ArgumentError(f"Expected an odd prime ≥ 3, got {p}")
    factor = smallest_factor(p)
    if factor != p:
        raise NotPrimeError(p, factor)


# ---------------------------------------------------------------------------
# Evaluations of the sum
# ---------------------------------------------------------------------------


def congruence_sum(p: int, k: int) -> int:
    """The exact integer Σ 2^(i−1)·C(k−1+i, k); valid for composite p too."""
    _validate_pair(p, k)
    return sum(binomial_exact(k - 1 + i, k) << (i - 1) for i in range(1, term_count(p, k) + 1))


def sum_exact(p: int, k: int) -> int:
    """Oracle residue: the exact sum reduced mod p."""
    return congruence_sum(p, k) % p


def sum_kernel_direct(ctx: ModContext, k: int) -> int:
    """Termwise table binomials with a running power of two."""
    p = ctx.p
    _validate_pair(p, k)
    total = 0
    power = 1
    for i in range(1, term_count(p, k) + 1):
        total = (total + mulmod(power, binom_mod(ctx, k - 1 + i, k), p)) % p
        power = mulmod(power, 2, p)
    return total


def sum_kernel_incremental(ctx: ModContext, k: int) -> int:
    """Term recurrence T_1 = 1, T_(i+1) = T_i·2·(k+i)·inv[i]; no factorial reads."""
    p = ctx.p
    _validate_pair(p, k)
    inv = ctx.inv
    total = 0
    term = 1
    for i in range(1, term_count(p, k) + 1):
        total += term
        if total >= p:
            total -= p
        term = mulmod(mulmod(term, 2 * (k + i), p), inv[i], p)
    return total


def incremental_residues(ctx: ModContext) -> np.ndarray:
    """Residues for every k = 1..(p−1)/2 at once; entry k−1 belongs to k.

    Runs the incremental recurrence over int64 vectors. k = 1..a is still
    active at step i exactly when a = (p−1−i)//2, so the live lanes are always a
    prefix. Operands stay below p < 2^31, so every product fits in 64 bits.
    """
    p = ctx.p
    half = (p - 1) // 2
    ks = np.arange(1, half + 1, dtype=np.int64)
    term = np.ones(half, dtype=np.int64)
    total = np.zeros(half, dtype=np.int64)
    factor = np.empty(half, dtype=np.int64)
    inv = ctx.inv
    for i in range(1, p - 2):
        live = (p - 1 - i) // 2
        if live == 0:
            break
        t, s, f = term[:live], total[:live], factor[:live]
        s += t
        np.remainder(s, p, out=s)
        # factor = (k+i)·(2·inv[i]) mod p
        np.add(ks[:live], i, out=f)
        np.multiply(f, 2 * inv[i] % p, out=f)
        np.remainder(f, p, out=f)
        t *= f
        np.remainder(t, p, out=t)
    return total


def make_report(p: int, k: int, residue: int, method: Method) -> CongruenceReport:
    return CongruenceReport(
        p=p,
        k=k,
        term_count=term_count(p, k),
        residue=residue,
        method=method,
        passed=residue == 0,
    )


def verify_prime(p: int, ctx: ModContext | None = None) -> list[CongruenceReport]:
    """One incremental-kernel report per k in [1, (p−1)/2]."""
    require_prime(p)
    ctx = ctx or make_context(p)
    residues = incremental_residues(ctx)
    reports = [make_report(p, k, int(residues[k - 1]), Method.INCREMENTAL_KERNEL) for k in range(1, (p - 1) // 2 + 1)]
    failed = sum(1 for r in reports if not r.passed)
    if failed:
        logger.warning("p=%d: %d of %d residues are nonzero", p, failed, len(reports))
    return reports


# ---------------------------------------------------------------------------
# Sweep over a prime range
# ---------------------------------------------------------------------------


class _PrimeOutcome(NamedTuple):
    p: int
    pairs: int
    failures: tuple[tuple[int, int], ...]
    digest: bytes


def _sweep_prime(p: int) -> _PrimeOutcome:
    """Worker body: verify one prime, return only what the merge needs."""
    residues = incremental_residues(make_context(p))
    failures = tuple((int(k0) + 1, int(residues[k0])) for k0 in np.flatnonzero(residues))
    digest = hashlib.sha256(p.to_bytes(8, "little") + residues.astype("<i8").tobytes()).digest()
    return _PrimeOutcome(p=p, pairs=len(residues), failures=failures, digest=digest)


def sweep(p_min: int, p_max: int, workers: int = 1) -> SweepReport:
    """Verify every prime in [p_min, p_max], parallel across primes.

    Per-prime outcomes are merged in ascending p (and k within a prime), so the
    report is identical for any worker count apart from elapsed and worker_count.
    """
    if not 3 <= p_min <= p_max:
        raise ArgumentError(f"Sweep range must satisfy 3 ≤ p_min ≤ p_max, got [{p_min}, {p_max}]")
    if p_max > settings.max_sweep_bound:
        raise ArgumentError(f"p_max={p_max} exceeds the sweep bound {settings.max_sweep_bound}")
    if workers < 1:
        raise ArgumentError(f"workers must be positive, got {workers}")

    start = time.perf_counter()
    primes = primes_in_range(p_min, p_max)
    logger.info("Sweeping %d primes in [%d, %d] with %d worker(s)", len(primes), p_min, p_max, workers)

    if workers == 1 or len(primes) <= 1:
        outcomes = [_sweep_prime(p) for p in primes]
    else:
        chunksize = max(1, len(primes) // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_sweep_prime, primes, chunksize=chunksize))

    outcomes.sort(key=lambda o: o.p)
    hasher = hashlib.sha256()
    failures: list[CongruenceReport] = []
    pairs = 0
    for outcome in outcomes:
        hasher.update(outcome.digest)
        pairs += outcome.pairs
        failures.extend(make_report(outcome.p, k, residue, Method.INCREMENTAL_KERNEL) for k, residue in outcome.failures)

    elapsed = time.perf_counter() - start
    logger.info("Sweep [%d, %d] took %.2fs: %d pairs, %d failure(s)", p_min, p_max, elapsed, pairs, len(failures))
    return SweepReport(
        p_min=p_min,
        p_max=p_max,
        primes_checked=len(primes),
        pairs_checked=pairs,
        failures=failures,
        digest=hasher.hexdigest(),
        worker_count=workers,
        elapsed=elapsed,
    )


# ---------------------------------------------------------------------------
# Composite exploration
# ---------------------------------------------------------------------------


def composite_scan(n_max: int) -> list[CongruenceReport]:
    """Oracle residues for every odd composite n ≤ n_max and every k.

    Informational only: nothing is asserted about which composites vanish.
    """
    if n_max < 9:
        raise ArgumentError(f"composite_scan needs n_max ≥ 9, got {n_max}")
    if n_max > settings.max_sweep_bound:
        raise ArgumentError(f"n_max={n_max} exceeds the scan bound {settings.max_sweep_bound}")
    mask = prime_mask(n_max)
    reports: list[CongruenceReport] = []
    for n in range(9, n_max + 1, 2):
        if mask[n]:
            continue
        for k in range(1, (n - 1) // 2 + 1):
            reports.append(make_report(n, k, sum_exact(n, k), Method.EXACT_ORACLE))
    logger.info("Composite scan up to %d produced %d reports", n_max, len(reports))
    return reports


def summarize_composites(reports: list[CongruenceReport]) -> list[CompositeSummary]:
    by_modulus: dict[int, list[CongruenceReport]] = {}
    for report in reports:
        by_modulus.setdefault(report.p, []).append(report)
    summaries = []
    for n in sorted(by_modulus):
        group = by_modulus[n]
        vanishing = sum(1 for r in group if r.residue == 0)
        summaries.append(
            CompositeSummary(
                n=n,
                smallest_factor=smallest_factor(n),
                pairs=len(group),
                vanishing=vanishing,
                all_vanish=vanishing == len(group),
            )
        )
    return summaries
