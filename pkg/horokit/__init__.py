"""Computational hyperbolic geometry for horocycle-flow experiments."""

__version__ = "0.1.0"
