"""Exact rational and prime-field linear algebra."""

from .matrix import BadPrime, DimensionMismatch, ModMatrix, RatMatrix, Rational
from .modular import EchelonModP, echelon_mod, kernel_basis_mod, matmul_mod, rank_mod
from .primes import DEFAULT_PRIMES, certification_primes, is_prime
from .rational import (
    EchelonQ,
    canonical_basis,
    independent_subset,
    kernel_basis,
    rank,
    subspace_contains,
    subspace_equal,
)
from .reconstruct import crt, rational_reconstruct, reconstruct_vector

__all__ = [
    "BadPrime",
    "DEFAULT_PRIMES",
    "DimensionMismatch",
    "EchelonModP",
    "EchelonQ",
    "ModMatrix",
    "RatMatrix",
    "Rational",
    "canonical_basis",
    "certification_primes",
    "crt",
    "echelon_mod",
    "independent_subset",
    "is_prime",
    "kernel_basis",
    "kernel_basis_mod",
    "matmul_mod",
    "rank",
    "rank_mod",
    "rational_reconstruct",
    "reconstruct_vector",
    "subspace_contains",
    "subspace_equal",
]
