"""Pair correlations and Riesz energies of zeros of Gaussian random polynomials."""

__version__ = "0.1.0"
