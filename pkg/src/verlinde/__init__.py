"""Trivalent-graph spin networks, Verlinde numbers, theta functions and
level-k modular data."""

__version__ = "0.1.0"
