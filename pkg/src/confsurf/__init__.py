"""Exact cube complexes, discrete configuration spaces, and Chebyshev
geometry for square-tiled surfaces."""

__version__ = "0.1.0"
