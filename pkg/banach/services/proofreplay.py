"""Executable replay of the derivative argument behind the prime congruence.

The rising factorial i(i+1)⋯(i+k−1) equals k!·C(k−1+i, k), so k!·S(p, k) is the
k-th derivative of Σ_{i=1}^{p−2k−1} x^(i+k−1) at x = 2. That polynomial is
(x^(p−1−k) − x^k)·(x−1)^(−1), and the Leibniz rule expands its derivative into
a sum over j whose (x−1)^(−1) factor contributes (−1)^(k−j)·(k−j)! at x = 2.
Both routes are evaluated mod p, then Fermat's little theorem collapses the
congruence onto exact rational identities that end in the Banach identity.
"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from banach.core.config import settings
from banach.core.exceptions import ArgumentError
from banach.models.report_models import ChainReport
from banach.models.report_models import ReducedIdentities
from banach.services.congruence import require_prime
from banach.services.congruence import sum_kernel_incremental
from banach.services.exactmath import binomial_exact
from banach.services.exactmath import factorial_exact
from banach.services.exactmath import pow2_rational
from banach.services.exactmath import rising_factorial
from banach.services.matchbox import check_identity
from banach.services.modarith import make_context
from banach.services.modarith import mulmod
from banach.services.modarith import powmod

__all__ = [
    "SparsePoly",
    "chain_check",
    "derivative",
    "geometric_poly",
    "leibniz_route",
    "reduced_identities",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class SparsePoly:
    """Polynomial over Z/pZ as (exponent, coefficient) pairs sorted by exponent.

    Coefficients are kept in [1, p−1]; the zero polynomial has no terms.
    """

    p: int
    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        previous = -1
        for exponent, coeff in self.terms:
            if exponent <= previous:
                raise ArgumentError(f"Exponents must be nonnegative and strictly increasing, got {self.terms}")
            if not 1 <= coeff < self.p:
                raise ArgumentError(f"Coefficient {coeff} of x^{exponent} is not a nonzero residue mod {self.p}")
            previous = exponent

    @classmethod
    def from_pairs(cls, p: int, pairs: Iterable[tuple[int, int]]) -> "SparsePoly":
        """Combine like exponents, reduce mod p and drop zero coefficients."""
        acc: dict[int, int] = {}
        for exponent, coeff in pairs:
            if exponent < 0:
                raise ArgumentError(f"Negative exponent {exponent} in a polynomial")
            acc[exponent] = (acc.get(exponent, 0) + coeff) % p
        return cls(p, tuple(sorted((e, c) for e, c in acc.items() if c)))

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        if other.p != self.p:
            raise ArgumentError(f"Cannot add polynomials over Z/{self.p} and Z/{other.p}")
        return SparsePoly.from_pairs(self.p, self.terms + other.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, x: int) -> int:
        """Value at x mod p, one powmod per stored term."""
        p = self.p
        return sum(mulmod(c, powmod(x % p, e, p), p) for e, c in self.terms) % p


def _require_replay_prime(p: int) -> None:
    """The replay materializes O(p) terms, so p is held to the sweep bound."""
    require_prime(p)
    if p > settings.max_sweep_bound:
        raise ArgumentError(f"p={p} exceeds the replay bound {settings.max_sweep_bound}")


def geometric_poly(p: int, k: int) -> SparsePoly:
    """Σ_{i=1}^{p−2k−1} x^(i+k−1): exponents k..p−k−2, all coefficients 1."""
    _require_replay_prime(p)
    if not 1 <= k <= (p - 1) // 2:
        raise ArgumentError(f"k must lie in [1, {(p - 1) // 2}] for p={p}, got {k}")
    return SparsePoly.from_pairs(p, ((i + k - 1, 1) for i in range(1, p - 2 * k)))


def _falling_mod(top: int, length: int, p: int) -> int:
    result = 1
    for step in range(length):
        result = mulmod(result, (top - step) % p, p)
    return result


def derivative(poly: SparsePoly, order: int) -> SparsePoly:
    """Formal derivative applied `order` times: c·x^e → c·e(e−1)⋯(e−order+1)·x^(e−order)."""
    if order < 0:
        raise ArgumentError(f"Derivative order must be nonnegative, got {order}")
    if order == 0:
        return poly
    p = poly.p
    return SparsePoly.from_pairs(
        p,
        ((e - order, mulmod(c, _falling_mod(e, order, p), p)) for e, c in poly.terms if e >= order),
    )


def _leibniz_halves(p: int, k: int, *, fermat: bool) -> tuple[int, int]:
    """Leibniz sum split into its x^(p−1−k) half and its x^k half, mod p.

    Returns (top, bottom) with the route value equal to top − bottom. With
    ``fermat`` the power 2^(p−1−k−j) is taken as 2^(−k−j), i.e. 2^(p−1) ≡ 1.
    """
    top_exponent = p - 1 - k
    inv2 = powmod(2, p - 2, p)
    top = 0
    bottom = 0
    for j in range(k + 1):
        # C(k, j)·((x−1)^(−1))^(k−j) at x = 2 is C(k, j)·(−1)^(k−j)·(k−j)!
        weight = binomial_exact(k, j) * factorial_exact(k - j) % p
        if (k - j) % 2:
            weight = (p - weight) % p
        if fermat:
            top_power = powmod(inv2, k + j, p)
        else:
            top_power = powmod(2, top_exponent - j, p)
        top_deriv = mulmod(_falling_mod(top_exponent, j, p), top_power, p)
        bottom_deriv = mulmod(_falling_mod(k, j, p), powmod(2, k - j, p), p)
        top = (top + mulmod(weight, top_deriv, p)) % p
        bottom = (bottom + mulmod(weight, bottom_deriv, p)) % p
    return top, bottom


def leibniz_route(p: int, k: int, *, fermat: bool = False) -> int:
    """Σ_j C(k, j)·D_j·(−1)^(k−j)·(k−j)! mod p with D_j the j-th derivative of x^(p−1−k) − x^k at 2."""
    top, bottom = _leibniz_halves(p, k, fermat=fermat)
    return (top - bottom) % p


@lru_cache(maxsize=512)
def reduced_identities(k: int) -> ReducedIdentities:
    """Check, over exact rationals, the identities the congruence reduces to."""
    if k < 0:
        raise ArgumentError(f"reduced_identities needs k ≥ 0, got {k}")
    k_fact = factorial_exact(k)
    two_k = pow2_rational(k)

    i1_lhs = sum(
        (binomial_exact(k, j) * factorial_exact(k - j) * rising_factorial(k + 1, j) * pow2_rational(-k - j) for j in range(k + 1)),
        Fraction(0),
    )
    i1_mid = k_fact * sum(((-1) ** j * binomial_exact(k, j) * pow2_rational(k - j) for j in range(k + 1)), Fraction(0))
    i1 = i1_lhs == i1_mid == k_fact

    i2_lhs = sum(
        (pow2_rational(-j) * binomial_exact(k, j) * factorial_exact(k - j) * factorial_exact(k + j) for j in range(k + 1)),
        Fraction(0),
    )
    i2 = i2_lhs == two_k * k_fact**2

    i3 = sum((pow2_rational(-j) * binomial_exact(k + j, k) for j in range(k + 1)), Fraction(0)) == two_k

    i4_lhs = sum((binomial_exact(2 * k - i, k) * pow2_rational(i - k) for i in range(k + 1)), Fraction(0))
    i4 = i4_lhs == two_k and i4_lhs == check_identity(k).lhs

    if not (i1 and i2 and i3 and i4):
        logger.error("Reduced identities fail at k=%d: I1=%s I2=%s I3=%s I4=%s", k, i1, i2, i3, i4)
    return ReducedIdentities(k=k, i1=i1, i2=i2, i3=i3, i4=i4)


def chain_check(p: int, k: int) -> ChainReport:
    """Replay the whole derivation for one (p, k)."""
    _require_replay_prime(p)
    ctx = make_context(p)
    poly = geometric_poly(p, k)
    lhs_direct = derivative(poly, k).evaluate(2)
    top, bottom = _leibniz_halves(p, k, fermat=False)
    lhs_leibniz = (top - bottom) % p
    fermat = leibniz_route(p, k, fermat=True)
    scaled_sum = mulmod(ctx.fact[k], sum_kernel_incremental(ctx, k), p)

    report = ChainReport(
        p=p,
        k=k,
        lhs_direct=lhs_direct,
        lhs_leibniz=lhs_leibniz,
        identities=reduced_identities(k),
        scaled_sum=scaled_sum,
        fermat=fermat,
        split_agrees=top == bottom,
    )
    if not report.passed:
        logger.error("Chain replay failed for p=%d k=%d: %s", p, k, report.record())
    return report
