"""Exact enumeration of pattern-avoiding permutations and verification of
their generating functions."""

__version__ = "0.1.0"
