"""Effective membership for sparse polynomial systems."""

__version__ = "0.1.0"
