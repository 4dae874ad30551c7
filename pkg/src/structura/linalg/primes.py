"""Certification primes."""

from __future__ import annotations

from functools import lru_cache

from sympy import isprime, nextprime

# the five smallest primes above 2**30
DEFAULT_PRIMES: tuple[int, ...] = (1073741827, 1073741831, 1073741833, 1073741839, 1073741843)

# residues must stay below 2**31 for the split-product kernels in ``modular``
WORD_LIMIT = 2**31


@lru_cache(maxsize=4096)
def is_prime(p: int) -> bool:
    return bool(isprime(int(p)))


def primes_after(start: int, count: int) -> list[int]:
    out: list[int] = []
    p = start
    while len(out) < count:
        p = int(nextprime(p))
        out.append(p)
    return out


def certification_primes(count: int) -> list[int]:
    """The first ``count`` primes above 2**30 (defaults first, then the next ones)."""
    if count <= len(DEFAULT_PRIMES):
        return list(DEFAULT_PRIMES[:count])
    return list(DEFAULT_PRIMES) + primes_after(DEFAULT_PRIMES[-1], count - len(DEFAULT_PRIMES))
