"""Exact-arithmetic toolkit for real quadratic division algebras.

Everything in this package computes over the rationals: matrices, tensors
and polynomials carry ``fractions.Fraction`` entries, every reported result
is exact, and all randomized searches are deterministic functions of an
explicit seed.
"""

__version__ = "0.1.0"
