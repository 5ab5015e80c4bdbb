"""Core custom exceptions for the toolkit."""


class BanachError(Exception):
    """Base exception for all toolkit errors."""


class ArgumentError(BanachError, ValueError):
    """Raised when an operation receives parameters outside its domain."""


class NotPrimeError(ArgumentError):
    """Raised when a prime-only operation receives a composite modulus."""

    def __init__(self, n: int, factor: int) -> None:
        self.n = n
        self.factor = factor
        super().__init__(f"{n} = {factor}·{n // factor} is not prime")


class TableRangeError(ArgumentError):
    """Raised when a modular binomial is requested outside the factorial table."""
