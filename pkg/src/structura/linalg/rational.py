"""Exact Gaussian elimination over Q.

Rows are folded one at a time into :class:`EchelonQ`, a reduced row-echelon
accumulator whose pivot rows are kept fully reduced: each has a 1 in its own
pivot column and 0 in every other pivot column.  Reducing an incoming row is
then a single pass over the pivot columns it touches.  Pivots are chosen as
the first nonzero column of the incoming remainder, which makes the result a
deterministic function of the row order.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from fractions import Fraction

from .matrix import DimensionMismatch, RatMatrix

Vector = list[Fraction]


class EchelonQ:
    """Reduced row-echelon accumulator over the rationals."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivot_rows: dict[int, dict[int, Fraction]] = {}
        # column -> pivots whose row has a nonzero entry there (non-pivot columns only)
        self._users: dict[int, set[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    @property
    def full(self) -> bool:
        return self.rank == self.ncols

    def reduce(self, row: dict[int, Fraction]) -> dict[int, Fraction]:
        """Remainder of ``row`` modulo the current row space (input untouched)."""
        out = dict(row)
        prs = self.pivot_rows
        for c in [c for c in row if c in prs]:
            f = out.pop(c, None)
            if not f:
                continue
            for k, v in prs[c].items():
                if k == c:
                    continue
                nv = out.get(k, 0) - f * v
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        return out

    def add(self, row: dict[int, Fraction]) -> int | None:
        """Fold ``row`` in; return the new pivot column or None if dependent."""
        rem = self.reduce(row)
        if not rem:
            return None
        q = min(rem)
        inv = 1 / rem[q]
        new = {k: v * inv for k, v in rem.items()}
        # clear column q from the existing pivot rows
        for p in self._users.pop(q, ()):
            prow = self.pivot_rows[p]
            f = prow.pop(q)
            for k, v in new.items():
                if k == q:
                    continue
                nv = prow.get(k, 0) - f * v
                if nv:
                    if k not in prow:
                        self._users.setdefault(k, set()).add(p)
                    prow[k] = nv
                else:
                    if k in prow:
                        del prow[k]
                        self._users[k].discard(p)
        new[q] = Fraction(1)
        self.pivot_rows[q] = new
        for k in new:
            if k != q:
                self._users.setdefault(k, set()).add(q)
        return q

    def kernel(self) -> list[Vector]:
        """Kernel basis, one vector per free column ``f``: 1 at ``f``, 0 at the other free columns."""
        free = [c for c in range(self.ncols) if c not in self.pivot_rows]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.ncols
            v[f] = Fraction(1)
            for p in self._users.get(f, ()):
                v[p] = -self.pivot_rows[p][f]
            basis.append(v)
        return basis

    def rows(self) -> list[Vector]:
        out = []
        for q in sorted(self.pivot_rows):
            v = [Fraction(0)] * self.ncols
            for k, x in self.pivot_rows[q].items():
                v[k] = x
            out.append(v)
        return out


def _fold(m: RatMatrix, stop_when_full: bool = False) -> EchelonQ:
    ech = EchelonQ(m.ncols)
    for row in m.row_dicts():
        if row:
            ech.add(row)
            if stop_when_full and ech.full:
                break
    return ech


def kernel_basis(m: RatMatrix) -> list[Vector]:
    """Basis of ``{v : m v = 0}`` in free-variable normal form.

    >>> kernel_basis(RatMatrix.from_dense([[1, 2], [2, 4]]))
    [[Fraction(-2, 1), Fraction(1, 1)]]
    """
    return _fold(m).kernel()


def rank(m: RatMatrix) -> int:
    return _fold(m, stop_when_full=True).rank


def _vec_dict(v: Sequence[object]) -> dict[int, Fraction]:
    return {i: Fraction(x) for i, x in enumerate(v) if x != 0}


def _check_lengths(vectors: Iterable[Sequence[object]], n: int) -> None:
    for v in vectors:
        if len(v) != n:
            raise DimensionMismatch(f"expected length {n}, got {len(v)}")


def span_echelon(vectors: Sequence[Sequence[object]], n: int) -> EchelonQ:
    _check_lengths(vectors, n)
    ech = EchelonQ(n)
    for v in vectors:
        ech.add(_vec_dict(v))
    return ech


def subspace_contains(space: Sequence[Sequence[object]], v: Sequence[object]) -> bool:
    """True iff ``v`` lies in the rational span of ``space``."""
    n = len(v)
    ech = span_echelon(space, n)
    return not ech.reduce(_vec_dict(v))


def subspace_equal(a: Sequence[Sequence[object]], b: Sequence[Sequence[object]]) -> bool:
    """True iff ``span(a) == span(b)``; the reduced echelon forms are compared."""
    if not a and not b:
        return True
    n = len((a or b)[0])
    _check_lengths(b, n)
    ea, eb = span_echelon(a, n), span_echelon(b, n)
    return ea.pivot_rows == eb.pivot_rows


def independent_subset(vectors: Sequence[Sequence[object]], n: int) -> list[int]:
    """Indices of a maximal linearly independent prefix-greedy subset."""
    ech = EchelonQ(n)
    keep = []
    for i, v in enumerate(vectors):
        if ech.add(_vec_dict(v)) is not None:
            keep.append(i)
    return keep


def canonical_basis(vectors: Sequence[Sequence[object]], n: int) -> list[Vector]:
    """Reduced row-echelon basis of the span (pivot order ascending)."""
    return span_echelon(vectors, n).rows()
