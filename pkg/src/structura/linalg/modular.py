"""Row-echelon forms over F_p for primes below 2**31.

The accumulator keeps a dense ``ncols x ncols`` table whose row ``q`` is the
fully reduced pivot row for pivot column ``q`` (zero rows elsewhere).  Tall
sparse systems are streamed through it in blocks: a block ``X`` is reduced in
one product ``X - X @ table``, the few surviving rows are eliminated densely,
and the new pivots are then cleared from the old pivot rows with one more
product.

Dense products of residues use an exact float64 route: both operands are cut
into 16-bit halves, so each partial product is below 2**32 and sums over up
to 2**20 terms (two of them added in the middle term) stay below 2**53.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .matrix import BadPrime, RatMatrix, check_prime_for
from .primes import WORD_LIMIT

_SPLIT = 16
_LOW = (1 << _SPLIT) - 1
_MAX_INNER = 1 << 20


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """``(a @ b) mod p`` for residue matrices, exact."""
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if a.shape[1] > _MAX_INNER:
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for lo in range(0, a.shape[1], _MAX_INNER):
            out += matmul_mod(a[:, lo : lo + _MAX_INNER], b[lo : lo + _MAX_INNER], p)
        return out % p
    a0, a1 = (a & _LOW).astype(np.float64), (a >> _SPLIT).astype(np.float64)
    b0, b1 = (b & _LOW).astype(np.float64), (b >> _SPLIT).astype(np.float64)
    shift = pow(2, _SPLIT, p)
    lo = np.fmod(a0 @ b0, p).astype(np.int64)
    mid = np.fmod(a0 @ b1 + a1 @ b0, p).astype(np.int64)
    hi = np.fmod(a1 @ b1, p).astype(np.int64)
    return (lo + (mid * shift) % p + ((hi * shift) % p) * shift) % p


class EchelonModP:
    """Reduced row-echelon accumulator over F_p (``5 < p < 2**31``)."""

    def __init__(self, ncols: int, p: int):
        if p >= WORD_LIMIT:
            raise BadPrime(f"modulus {p} exceeds the word-size kernel limit 2**31")
        self.p = p
        self.ncols = ncols
        self.table = np.zeros((ncols, ncols), dtype=np.int64)
        self.is_pivot = np.zeros(ncols, dtype=bool)

    @property
    def rank(self) -> int:
        return int(self.is_pivot.sum())

    @property
    def pivots(self) -> np.ndarray:
        return np.flatnonzero(self.is_pivot)

    def add_sparse(self, block: sp.csr_matrix) -> int:
        """Fold a block of rows with small signed integer entries; return the rank gain."""
        if block.nnz == 0:
            return 0
        p = self.p
        free = np.flatnonzero(~self.is_pivot)
        piv = self.pivots
        # reduced rows vanish on pivot columns, so only free columns are formed
        head = block[:, piv] if len(piv) else None
        tail = block[:, free].toarray()
        if head is None or head.nnz == 0:
            red_free = tail % p
        else:
            tab = self.table[np.ix_(piv, free)]
            widest = int(np.diff(head.indptr).max())
            bound = int(np.abs(head.data).max()) * (p - 1) * widest
            if bound < 2**62:
                red_free = (tail - head @ tab) % p
            else:
                head = head.copy()
                head.data %= p
                lo = head.copy()
                lo.data &= _LOW
                hi = head.copy()
                hi.data >>= _SPLIT
                red_free = (tail - (lo @ tab) % p - ((hi @ tab) % p) * pow(2, _SPLIT, p)) % p
        red = np.zeros((block.shape[0], self.ncols), dtype=np.int64)
        red[:, free] = red_free
        return self._absorb(red)

    def add_dense(self, block: np.ndarray) -> int:
        """Fold a block of residue rows; return the rank gain."""
        block = np.asarray(block, dtype=np.int64) % self.p
        piv = self.pivots
        if len(piv):
            red = (block - matmul_mod(block[:, piv], self.table[piv], self.p)) % self.p
        else:
            red = block
        return self._absorb(red)

    def _absorb(self, red: np.ndarray) -> int:
        p = self.p
        rows = red[red.any(axis=1)]
        if not len(rows):
            return 0
        new_rows: list[np.ndarray] = []
        new_piv: list[int] = []
        while len(rows):
            colmask = rows.any(axis=0)
            q = int(np.argmax(colmask))
            r = int(np.argmax(rows[:, q] != 0))
            prow = rows[r] * pow(int(rows[r, q]), -1, p) % p
            rows = np.delete(rows, r, axis=0)
            f = rows[:, q]
            hit = np.flatnonzero(f)
            if len(hit):
                rows[hit] = (rows[hit] - f[hit, None] * prow) % p
            if new_rows:
                stack = np.asarray(new_rows)
                g = stack[:, q]
                if g.any():
                    stack = (stack - g[:, None] * prow) % p
                    new_rows = list(stack)
            new_rows.append(prow)
            new_piv.append(q)
            rows = rows[rows.any(axis=1)]
        new = np.asarray(new_rows)
        old = self.pivots
        self.is_pivot[new_piv] = True
        if len(old):
            coef = self.table[np.ix_(old, new_piv)]
            if coef.any():
                # every pivot row is zero on the other pivot columns, so only
                # the remaining free columns need the update
                free = np.flatnonzero(~self.is_pivot)
                self.table[np.ix_(old, new_piv)] = 0
                if len(free):
                    upd = matmul_mod(coef, new[:, free], p)
                    self.table[np.ix_(old, free)] = (self.table[np.ix_(old, free)] - upd) % p
        self.table[new_piv] = new
        return len(new_piv)

    def kernel(self) -> list[np.ndarray]:
        """Kernel basis in free-variable normal form, as residue vectors."""
        free = np.flatnonzero(~self.is_pivot)
        piv = self.pivots
        out = []
        for f in free:
            v = np.zeros(self.ncols, dtype=np.int64)
            v[f] = 1
            v[piv] = (-self.table[piv, f]) % self.p
            out.append(v)
        return out

    @property
    def nullity(self) -> int:
        return self.ncols - self.rank


def echelon_mod(m: RatMatrix, p: int, rank_only: bool = False) -> EchelonModP:
    """Stream all rows of ``m`` through an :class:`EchelonModP`.

    Only numerators are used; the common denominator is a unit mod ``p``.
    The block size shrinks while blocks still raise the rank a lot and grows
    once they mostly reduce to zero.
    """
    check_prime_for(m, p)
    ech = EchelonModP(m.ncols, p)
    nums = m.nums if m.nums.dtype != object else m.reduce_mod(p)
    ptr = m.row_pointer()
    lo, block = 0, 64
    while lo < m.nrows:
        hi = min(lo + block, m.nrows)
        a, b = ptr[lo], ptr[hi]
        chunk = sp.csr_matrix(
            (nums[a:b], m.cols[a:b], ptr[lo : hi + 1] - a), shape=(hi - lo, m.ncols), dtype=np.int64
        )
        gain = ech.add_sparse(chunk)
        if rank_only and ech.rank == m.ncols:
            break
        block = min(block * 2, 8192) if gain * 4 < hi - lo else max(block // 2, 32)
        lo = hi
    return ech


def kernel_basis_mod(m: RatMatrix, p: int) -> list[list[int]]:
    """Kernel of ``m`` reduced mod ``p``, in free-variable normal form."""
    return [v.tolist() for v in echelon_mod(m, p).kernel()]


def rank_mod(m: RatMatrix, p: int) -> int:
    return echelon_mod(m, p, rank_only=True).rank
