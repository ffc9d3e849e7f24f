"""Positive braid monoids, the Cat-operad of positive braids, and checks of its factorization categories."""

__version__ = "0.1.0"
