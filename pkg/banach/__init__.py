"""Exact and modular arithmetic toolkit for the Banach matchbox problem and its prime congruence."""

__version__ = "0.1.0"
