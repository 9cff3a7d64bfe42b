"""Exact computations with graded level algebras over a prime field."""

from levalg.gfp import DEFAULT_PRIME, PrimeField

__all__ = ["DEFAULT_PRIME", "PrimeField"]
