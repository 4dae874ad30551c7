"""Chinese remaindering and rational reconstruction."""

from __future__ import annotations

import math
from collections.abc import Sequence
from fractions import Fraction


def crt_pair(a1: int, m1: int, a2: int, m2: int) -> tuple[int, int]:
    """Combine ``x = a1 (mod m1)`` and ``x = a2 (mod m2)`` for coprime moduli."""
    t = (a2 - a1) * pow(m1, -1, m2) % m2
    m = m1 * m2
    return (a1 + m1 * t) % m, m


def crt(residues: Sequence[int], moduli: Sequence[int]) -> tuple[int, int]:
    a, m = residues[0] % moduli[0], moduli[0]
    for r, p in zip(residues[1:], moduli[1:]):
        a, m = crt_pair(a, m, r % p, p)
    return a, m


def rational_reconstruct(a: int, m: int) -> Fraction | None:
    """The unique ``n/d`` with ``n = a d (mod m)``, ``|n|, d <= sqrt(m/2)``, or None.

    Extended Euclid on ``(m, a)`` stopped at the first remainder below the bound.
    """
    a %= m
    bound = math.isqrt(m // 2)
    r0, r1 = m, a
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound or math.gcd(r1, abs(t1)) != 1:
        return None
    return Fraction(r1, t1)


def reconstruct_vector(columns: Sequence[Sequence[int]], moduli: Sequence[int]) -> list[Fraction] | None:
    """Lift a vector given by its residues at each modulus (``columns[i]`` is mod ``moduli[i]``)."""
    out = []
    for entries in zip(*columns):
        a, m = crt(entries, moduli)
        x = rational_reconstruct(a, m)
        if x is None:
            return None
        out.append(x)
    return out
