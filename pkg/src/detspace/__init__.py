"""Determinantal polynomials of subspaces of matrices over finite fields."""

__version__ = "0.1.0"
