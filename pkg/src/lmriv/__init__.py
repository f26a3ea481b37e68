"""Exact Laplacian matching polynomials and integral root variation checks."""

__version__ = "0.1.0"
