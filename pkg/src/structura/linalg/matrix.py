"""Sparse exact matrices over Q.

A :class:`RatMatrix` stores integer numerators in coordinate form together
with one common positive denominator.  Entries are kept sorted row-major,
unique, and free of explicit zeros, so two equal matrices always have equal
storage.  Numerators live in an ``int64`` array while they fit and fall back
to Python integers (``object`` dtype) otherwise, so arithmetic never rounds.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from fractions import Fraction

import numpy as np

from .primes import is_prime

Rational = Fraction

_INT64_SAFE = 2**62


class BadPrime(ValueError):
    """The modulus is not an admissible certification prime for a matrix."""


class DimensionMismatch(ValueError):
    """Vector or matrix shapes are incompatible."""


def _lcm_many(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def _as_int_array(values: Sequence[int]) -> np.ndarray:
    if len(values) and max(abs(int(v)) for v in values) >= _INT64_SAFE:
        arr = np.empty(len(values), dtype=object)
        arr[:] = [int(v) for v in values]
        return arr
    return np.asarray(values, dtype=np.int64).reshape(-1)


class RatMatrix:
    """Immutable sparse rational matrix ``nums / den`` in row-major COO form."""

    __slots__ = ("nrows", "ncols", "rows", "cols", "nums", "den", "_row_ptr")

    def __init__(self, nrows: int, ncols: int, rows, cols, nums, den: int = 1):
        """Build from raw integer triplets; duplicates are summed, zeros dropped."""
        if den <= 0:
            raise ValueError("denominator must be positive")
        rows = np.asarray(rows, dtype=np.int64).reshape(-1)
        cols = np.asarray(cols, dtype=np.int64).reshape(-1)
        nums = np.asarray(nums)
        if nums.dtype != object:
            nums = nums.astype(np.int64, copy=False)
        nums = nums.reshape(-1)
        if not (len(rows) == len(cols) == len(nums)):
            raise DimensionMismatch("triplet arrays differ in length")
        if len(rows) and (rows.min() < 0 or rows.max() >= nrows or cols.min() < 0 or cols.max() >= ncols):
            raise IndexError("entry index out of range")

        if len(rows):
            key = rows * ncols + cols
            order = np.argsort(key, kind="stable")
            key, rows, cols, nums = key[order], rows[order], cols[order], nums[order]
            starts = np.flatnonzero(np.r_[True, key[1:] != key[:-1]])
            if len(starts) != len(key):
                nums = np.add.reduceat(nums, starts)
                rows, cols = rows[starts], cols[starts]
            keep = nums != 0
            rows, cols, nums = rows[keep], cols[keep], nums[keep]

        g = den
        for v in (nums.tolist() if len(nums) else []):
            g = math.gcd(g, int(v))
            if g == 1:
                break
        if g > 1:
            nums = nums // g
            den //= g
        if nums.dtype == object and len(nums) and max(abs(int(v)) for v in nums) < _INT64_SAFE:
            nums = nums.astype(np.int64)

        self.nrows, self.ncols = int(nrows), int(ncols)
        self.rows, self.cols, self.nums, self.den = rows, cols, nums, int(den)
        self._row_ptr = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable[tuple[int, int, object]]) -> "RatMatrix":
        triples = [(int(r), int(c), Fraction(v)) for r, c, v in entries]
        den = _lcm_many(v.denominator for _, _, v in triples)
        return cls(
            nrows,
            ncols,
            [t[0] for t in triples],
            [t[1] for t in triples],
            _as_int_array([t[2].numerator * (den // t[2].denominator) for t in triples]),
            den,
        )

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[object]], ncols: int | None = None) -> "RatMatrix":
        data = [list(r) for r in data]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise DimensionMismatch("ragged dense matrix")
        return cls.from_entries(
            len(data), ncols, ((i, j, v) for i, r in enumerate(data) for j, v in enumerate(r) if v != 0)
        )

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        idx = np.arange(n)
        return cls(n, n, idx, idx, np.ones(n, dtype=np.int64))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RatMatrix":
        return cls(nrows, ncols, [], [], np.zeros(0, dtype=np.int64))

    # -- accessors ---------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def nnz(self) -> int:
        return len(self.nums)

    def entries(self) -> list[tuple[int, int, Fraction]]:
        d = self.den
        return [(int(r), int(c), Fraction(int(v), d)) for r, c, v in zip(self.rows, self.cols, self.nums)]

    def row_pointer(self) -> np.ndarray:
        if self._row_ptr is None:
            self._row_ptr = np.searchsorted(self.rows, np.arange(self.nrows + 1))
        return self._row_ptr

    def row_dicts(self, row_ids: Iterable[int] | None = None) -> Iterable[dict[int, Fraction]]:
        """Yield each requested row as ``{col: Fraction}`` (empty rows included)."""
        ptr = self.row_pointer()
        d = self.den
        cols, nums = self.cols.tolist(), self.nums.tolist()
        for r in range(self.nrows) if row_ids is None else row_ids:
            lo, hi = ptr[r], ptr[r + 1]
            yield {cols[k]: Fraction(nums[k], d) for k in range(lo, hi)}

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for r, c, v in self.entries():
            out[r][c] = v
        return out

    def take_rows(self, row_ids: Sequence[int]) -> "RatMatrix":
        """Submatrix on the given rows, renumbered in the given order."""
        ptr = self.row_pointer()
        pieces = [np.arange(ptr[r], ptr[r + 1]) for r in row_ids]
        sel = np.concatenate(pieces) if pieces else np.zeros(0, dtype=np.int64)
        new_rows = np.repeat(np.arange(len(row_ids)), [len(p) for p in pieces])
        return RatMatrix(len(row_ids), self.ncols, new_rows, self.cols[sel], self.nums[sel], self.den)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.den == other.den
            and np.array_equal(self.rows, other.rows)
            and np.array_equal(self.cols, other.cols)
            and all(int(a) == int(b) for a, b in zip(self.nums, other.nums))
        )

    def __hash__(self):
        return hash((self.shape, self.den, self.rows.tobytes(), self.cols.tobytes(), tuple(map(int, self.nums))))

    def __repr__(self) -> str:
        return f"RatMatrix({self.nrows}x{self.ncols}, nnz={self.nnz}, den={self.den})"

    # -- arithmetic --------------------------------------------------------

    def matvec(self, v: Sequence[object]) -> list[Fraction]:
        """Exact product ``self @ v``."""
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.ncols} columns")
        vf = [Fraction(x) for x in v]
        scale = _lcm_many(x.denominator for x in vf)
        vi = [x.numerator * (scale // x.denominator) for x in vf]
        acc = self._int_matvec(vi)
        total = self.den * scale
        return [Fraction(int(a), total) for a in acc]

    def annihilates(self, v: Sequence[object]) -> bool:
        """True iff ``self @ v == 0`` exactly."""
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.ncols} columns")
        vf = [Fraction(x) for x in v]
        scale = _lcm_many(x.denominator for x in vf)
        vi = [x.numerator * (scale // x.denominator) for x in vf]
        return not np.any(self._int_matvec(vi))

    def _int_matvec(self, vi: list[int]) -> np.ndarray:
        if not self.nnz:
            return np.zeros(self.nrows, dtype=np.int64)
        vmax = max((abs(x) for x in vi), default=0)
        nmax = int(np.max(np.abs(self.nums))) if self.nums.dtype != object else max(abs(int(x)) for x in self.nums)
        widest = int(np.max(np.diff(self.row_pointer())))
        if self.nums.dtype != object and vmax * nmax * widest < _INT64_SAFE:
            prod = self.nums * np.asarray(vi, dtype=np.int64)[self.cols]
            return _segment_sum(prod, self.rows, self.nrows)
        vo = np.empty(len(vi), dtype=object)
        vo[:] = vi
        prod = self.nums.astype(object) * vo[self.cols]
        out = np.zeros(self.nrows, dtype=object)
        np.add.at(out, self.rows, prod)
        return out

    def reduce_mod(self, p: int) -> np.ndarray:
        """Numerators reduced into ``[0, p)`` (the kernel ignores the common denominator)."""
        check_prime_for(self, p)
        if self.nums.dtype == object:
            return np.asarray([int(v) % p for v in self.nums], dtype=np.int64)
        return np.mod(self.nums, p)


def _segment_sum(values: np.ndarray, rows: np.ndarray, nrows: int) -> np.ndarray:
    out = np.zeros(nrows, dtype=np.int64)
    np.add.at(out, rows, values)
    return out


def check_prime_for(m: RatMatrix, p: int) -> None:
    """Raise :class:`BadPrime` unless ``p`` is a prime above 5 dividing no entry denominator."""
    if p <= 5 or not is_prime(p):
        raise BadPrime(f"modulus {p} must be a prime above 5")
    if m.den % p == 0:
        # den is the lcm of reduced entry denominators, so p divides one of them
        raise BadPrime(f"modulus {p} divides an entry denominator")


class ModMatrix:
    """Sparse matrix of residues modulo a prime ``p > 5``."""

    __slots__ = ("modulus", "nrows", "ncols", "rows", "cols", "residues")

    def __init__(self, modulus: int, nrows: int, ncols: int, rows, cols, residues):
        if modulus <= 5 or not is_prime(modulus):
            raise BadPrime(f"modulus {modulus} must be a prime above 5")
        res = np.mod(np.asarray(residues, dtype=np.int64), modulus)
        keep = res != 0
        self.modulus = int(modulus)
        self.nrows, self.ncols = int(nrows), int(ncols)
        self.rows = np.asarray(rows, dtype=np.int64)[keep]
        self.cols = np.asarray(cols, dtype=np.int64)[keep]
        self.residues = res[keep]

    @classmethod
    def from_rat(cls, m: RatMatrix, p: int) -> "ModMatrix":
        return cls(p, m.nrows, m.ncols, m.rows, m.cols, m.reduce_mod(p))

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=np.int64)
        out[self.rows, self.cols] = self.residues
        return out
