import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from banach.core.exceptions import ArgumentError
from banach.services.exactmath import binomial_exact
from banach.services.exactmath import factorial_exact
from banach.services.exactmath import format_rational
from banach.services.exactmath import pow2_rational
from banach.services.exactmath import rising_factorial


@pytest.mark.parametrize(("n", "k", "expected"), [(4, 2, 6), (7, 0, 1), (3, 5, 0), (7, 7, 1), (0, 0, 1)])
def test_binomial_examples(n: int, k: int, expected: int) -> None:
    assert binomial_exact(n, k) == expected


def test_binomial_pascal_recurrence_and_symmetry() -> None:
    for n in range(1, 65):
        for k in range(1, n + 1):
            assert binomial_exact(n, k) == binomial_exact(n - 1, k - 1) + binomial_exact(n - 1, k)
        for k in range(n + 1):
            assert binomial_exact(n, k) == binomial_exact(n, n - k)


def test_binomial_matches_stdlib_for_large_top() -> None:
    for n, k in [(2000, 3), (2000, 1000), (1999, 17), (500, 250)]:
        assert binomial_exact(n, k) == math.comb(n, k)


def test_binomial_rejects_negative_arguments() -> None:
    with pytest.raises(ArgumentError):
        binomial_exact(-1, 0)
    with pytest.raises(ArgumentError):
        binomial_exact(3, -2)


@pytest.mark.parametrize(("e", "expected"), [(-2, Fraction(1, 4)), (0, Fraction(1)), (10, Fraction(1024)), (-1, Fraction(1, 2))])
def test_pow2_rational(e: int, expected: Fraction) -> None:
    assert pow2_rational(e) == expected


@pytest.mark.parametrize(("m", "expected"), [(0, 1), (5, 120), (10, 3628800)])
def test_factorial_examples(m: int, expected: int) -> None:
    assert factorial_exact(m) == expected


def test_factorial_recurrence() -> None:
    for m in range(1, 201):
        assert factorial_exact(m) == m * factorial_exact(m - 1)


def test_rising_factorial() -> None:
    assert rising_factorial(4, 0) == 1
    assert rising_factorial(4, 3) == 120
    assert rising_factorial(1, 6) == factorial_exact(6)


@given(
    a=st.integers(min_value=0, max_value=10**6),
    b=st.integers(min_value=1, max_value=10**6),
    g=st.integers(min_value=1, max_value=10**6),
)
def test_rational_reduction_is_structural(a: int, b: int, g: int) -> None:
    assert Fraction(a * g, b * g) == Fraction(a, b)
    assert format_rational(Fraction(a * g, b * g)) == format_rational(Fraction(a, b))


def test_rational_format() -> None:
    assert format_rational(Fraction(6, 16)) == "3/8"
    assert format_rational(Fraction(4)) == "4/1"
    assert format_rational(0) == "0/1"
