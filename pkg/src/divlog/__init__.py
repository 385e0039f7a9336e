"""Exact combinatorics of fs monoids and fans, with the calculus of
morphisms up to subdivision."""

__version__ = "0.1.0"
