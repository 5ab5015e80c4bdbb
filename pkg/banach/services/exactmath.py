"""Exact integer and rational arithmetic.

Python ``int`` is the unbounded integer and :class:`fractions.Fraction` the
rational type; fractions normalize on construction, so equality is structural.
This layer is the ground truth the modular kernels are checked against.
"""

import math
from fractions import Fraction

from banach.core.exceptions import ArgumentError

__all__ = [
    "binomial_exact",
    "factorial_exact",
    "format_rational",
    "pow2_rational",
    "rising_factorial",
]


def binomial_exact(n: int, k: int) -> int:
    """Return C(n, k); zero when k > n.

    Multiplicative formula: after step i the running product equals C(n-k+i, i),
    so every division is exact.
    """
    if n < 0 or k < 0:
        raise ArgumentError(f"binomial_exact needs nonnegative arguments, got ({n}, {k})")
    if k > n:
        return 0
    k = min(k, n - k)
    result = 1
    for i in range(1, k + 1):
        result = result * (n - k + i) // i
    return result


def pow2_rational(e: int) -> Fraction:
    """Return 2**e exactly, for negative exponents too."""
    if e >= 0:
        return Fraction(1 << e)
    return Fraction(1, 1 << -e)


def factorial_exact(m: int) -> int:
    if m < 0:
        raise ArgumentError(f"factorial_exact needs a nonnegative argument, got {m}")
    return math.factorial(m)


def rising_factorial(bottom: int, length: int) -> int:
    """bottom·(bottom+1)⋯(bottom+length−1); the empty product is 1."""
    result = 1
    for step in range(length):
        result *= bottom + step
    return result


def format_rational(value: Fraction | int) -> str:
    """Serialize as "num/den" in lowest terms, integers included ("4/1")."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"
