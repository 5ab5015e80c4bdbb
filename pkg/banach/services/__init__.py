"""This module contains the computational services: exact and modular arithmetic, verification and simulation."""
