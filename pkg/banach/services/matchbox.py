"""Exact Banach matchbox distribution and the Banach identity.

u_n(r) = C(2n−r, n)·2^(r−2n) is the probability that r matches remain in the
other box when an empty box is first picked; r is the positional index of the
probability vector throughout.
"""

import logging
from collections.abc import Iterator
from fractions import Fraction

from banach.core.exceptions import ArgumentError
from banach.models.report_models import IdentityCheck
from banach.models.report_models import MatchboxDistribution
from banach.services.exactmath import pow2_rational

__all__ = [
    "banach_binomials",
    "check_identity",
    "distribution",
]

logger = logging.getLogger(__name__)


def _require_box_size(n: int) -> None:
    if n < 0:
        raise ArgumentError(f"Box size must be nonnegative, got n={n}")


def banach_binomials(n: int) -> Iterator[tuple[int, int]]:
    """Yield (r, C(2n−r, n)) for r = n, n−1, …, 0.

    Walks the column with C(2n−r, n) = C(2n−r−1, n)·(2n−r)/(n−r), an exact
    division, starting from C(n, n) = 1.
    """
    _require_box_size(n)
    binom = 1
    yield n, binom
    for r in range(n - 1, -1, -1):
        binom = binom * (2 * n - r) // (n - r)
        yield r, binom


def distribution(n: int) -> MatchboxDistribution:
    """Exact u_n(r) for r = 0..n."""
    _require_box_size(n)
    probs: list[Fraction] = [Fraction(0)] * (n + 1)
    for r, binom in banach_binomials(n):
        probs[r] = Fraction(binom, 1 << (2 * n - r))
    logger.debug("Built matchbox distribution for n=%d", n)
    return MatchboxDistribution(n=n, probs=tuple(probs))


def check_identity(n: int) -> IdentityCheck:
    """Evaluate Σ_r C(2n−r, n)·2^(r−n) and compare it with 2^n."""
    _require_box_size(n)
    # Common denominator 2^n: lhs·2^n = Σ_r C(2n−r, n)·2^r.
    numerator = sum(binom << r for r, binom in banach_binomials(n))
    lhs = Fraction(numerator, 1 << n)
    rhs = pow2_rational(n)
    holds = lhs == rhs
    if not holds:
        logger.error("Banach identity fails at n=%d: lhs=%s rhs=%s", n, lhs, rhs)
    return IdentityCheck(n=n, lhs=lhs, rhs=rhs, holds=holds)
