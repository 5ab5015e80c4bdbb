"""This module contains core application functionality."""
