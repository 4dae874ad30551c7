"""Exact contractions of integer tensors.

Each contraction is routed by an a-priori bound on its result: float64 (and
BLAS) when every partial sum stays below 2**53, int64 below 2**62, and Python
integers otherwise.  All three routes return the same integers.
"""

from __future__ import annotations

import math

import numpy as np

_FLOAT_EXACT = 2**53
_INT64_SAFE = 2**62


def max_abs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(x)) for x in a.flat)
    return int(np.max(np.abs(a)))


def exact_einsum(subscripts: str, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``np.einsum(subscripts, a, b)`` for integer arrays, without rounding or overflow."""
    inputs, out = subscripts.replace(" ", "").split("->")
    sa, sb = inputs.split(",")
    sizes = dict(zip(sa, a.shape))
    sizes.update(zip(sb, b.shape))
    summed = (set(sa) | set(sb)) - set(out)
    terms = math.prod(sizes[c] for c in summed) if summed else 1
    bound = max_abs(a) * max_abs(b) * terms
    if bound < _FLOAT_EXACT:
        res = np.einsum(subscripts, a.astype(np.float64), b.astype(np.float64), optimize=True)
        return np.rint(res).astype(np.int64)
    if bound < _INT64_SAFE:
        return np.einsum(subscripts, a.astype(np.int64), b.astype(np.int64))
    return np.einsum(subscripts, a.astype(object), b.astype(object))


def exact_scale(a: np.ndarray, k: int) -> np.ndarray:
    """``k * a`` promoted to Python integers when int64 could overflow."""
    if a.dtype != object and max_abs(a) * abs(k) < _INT64_SAFE:
        return a * k
    return a.astype(object) * k
