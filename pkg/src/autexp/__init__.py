"""Computational checks on the exponent of automorphism groups of Riemann surfaces."""

__version__ = "0.1.0"
