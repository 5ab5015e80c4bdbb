"""Per-prime modular arithmetic kernels.

A :class:`ModContext` carries factorial, inverse-factorial and inverse tables
for one odd prime, built once in O(p) and shared read-only, so binomials with
top index below p cost O(1).
"""

import logging
from dataclasses import dataclass

from banach.core.config import settings
from banach.core.exceptions import ArgumentError
from banach.core.exceptions import TableRangeError

__all__ = [
    "ModContext",
    "binom_mod",
    "make_context",
    "mulmod",
    "powmod",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class ModContext:
    """Lookup tables for arithmetic modulo the odd prime p.

    Attributes:
        p: The modulus.
        fact: fact[m] = m! mod p for 0 ≤ m ≤ p−1.
        inv_fact: inv_fact[m] = (m!)^(−1) mod p.
        inv: inv[m] = m^(−1) mod p for 1 ≤ m ≤ p−1; inv[0] is an unused 0.
    """

    p: int
    fact: tuple[int, ...]
    inv_fact: tuple[int, ...]
    inv: tuple[int, ...]


def make_context(p: int) -> ModContext:
    """Build the tables for p; primality is the caller's responsibility."""
    if p < 3 or p % 2 == 0:
        raise ArgumentError(f"Modulus must be an odd prime ≥ 3, got {p}")
    if p >= settings.max_modulus:
        raise ArgumentError(f"Modulus {p} exceeds the supported bound {settings.max_modulus}")

    fact = [1] * p
    inv = [0] * p
    inv_fact = [1] * p
    inv[1] = 1
    for m in range(2, p):
        fact[m] = fact[m - 1] * m % p
        inv[m] = (p - (p // m) * inv[p % m] % p) % p
    for m in range(1, p):
        inv_fact[m] = inv_fact[m - 1] * inv[m] % p
    logger.debug("Built modular tables for p=%d", p)
    return ModContext(p=p, fact=tuple(fact), inv_fact=tuple(inv_fact), inv=tuple(inv))


def mulmod(a: int, b: int, p: int) -> int:
    """(a·b) mod p. Python integers never overflow, so the product is formed exactly."""
    return a * b % p


def powmod(a: int, e: int, p: int) -> int:
    """a^e mod p by square-and-multiply (the builtin three-argument pow)."""
    if e < 0:
        raise ArgumentError(f"powmod needs a nonnegative exponent, got {e}")
    return pow(a, e, p)


def binom_mod(ctx: ModContext, n: int, k: int) -> int:
    """C(n, k) mod p from the tables; 0 when k > n."""
    if n >= ctx.p or n < 0:
        raise TableRangeError(f"binom_mod top index {n} is outside the table range [0, {ctx.p - 1}]")
    if k < 0 or k > n:
        return 0
    return ctx.fact[n] * ctx.inv_fact[k] % ctx.p * ctx.inv_fact[n - k] % ctx.p
