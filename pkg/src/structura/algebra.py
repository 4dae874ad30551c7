"""Finite-dimensional algebras given by structure constants.

An :class:`Algebra` stores ``e_i e_j = sum_k c[i][j][k] e_k`` sparsely, keyed
by the pair ``(i, j)``, with an optional unit vector and an optional
involution matrix (column ``j`` is the image of ``e_j``).  Everything is
exact; the identity checks run on scaled integer tensors.
"""

from __future__ import annotations

import json
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .linalg import RatMatrix, kernel_basis
from .linalg.tensor import exact_einsum, exact_scale

Coords = tuple[Fraction, ...]


class AlgebraMismatch(ValueError):
    """Elements from different algebras were combined."""


class NoInvolution(ValueError):
    """The operation needs an involution and the algebra has none."""


class NoUnit(ValueError):
    """The operation needs a unit and the algebra has none."""


class InvariantViolation(ValueError):
    """A constructed algebra failed its unit or involution axioms."""


def _frac_tuple(v: Iterable[object]) -> Coords:
    return tuple(Fraction(x) for x in v)


def _lcm(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def _scaled(values: Sequence[Fraction]) -> tuple[list[int], int]:
    den = _lcm(v.denominator for v in values)
    return [v.numerator * (den // v.denominator) for v in values], den


def _int_array(nums: list[int], shape: tuple[int, ...]) -> np.ndarray:
    if nums and max(abs(x) for x in nums) >= 2**62:
        arr = np.empty(len(nums), dtype=object)
        arr[:] = nums
        return arr.reshape(shape)
    return np.asarray(nums, dtype=np.int64).reshape(shape)


@dataclass(frozen=True, eq=False)
class Algebra:
    dim: int
    labels: tuple[str, ...]
    sc: Mapping[tuple[int, int], Mapping[int, Fraction]]
    unit: Coords | None = None
    involution: RatMatrix | None = None
    name: str = ""

    def __post_init__(self):
        n = self.dim
        if n <= 0:
            raise ValueError("dimension must be positive")
        if len(self.labels) != n:
            raise ValueError(f"{len(self.labels)} labels for dimension {n}")
        clean: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), prod in self.sc.items():
            if not (0 <= i < n and 0 <= j < n):
                raise IndexError(f"product index {(i, j)} out of range")
            row = {int(k): Fraction(v) for k, v in prod.items() if v != 0}
            if any(not 0 <= k < n for k in row):
                raise IndexError(f"result index out of range in {(i, j)}")
            if row:
                clean[(int(i), int(j))] = row
        object.__setattr__(self, "sc", clean)
        object.__setattr__(self, "labels", tuple(self.labels))
        if self.unit is not None:
            if len(self.unit) != n:
                raise ValueError("unit has wrong length")
            object.__setattr__(self, "unit", _frac_tuple(self.unit))
        if self.involution is not None and self.involution.shape != (n, n):
            raise ValueError("involution has wrong shape")

    # -- basic data ----------------------------------------------------------

    @classmethod
    def from_tensor(cls, tensor, labels=None, unit=None, involution=None, name: str = "") -> "Algebra":
        """Build from a dense ``n x n x n`` nested sequence of structure constants."""
        n = len(tensor)
        sc = {}
        for i in range(n):
            for j in range(n):
                prod = {k: Fraction(tensor[i][j][k]) for k in range(n) if tensor[i][j][k] != 0}
                if prod:
                    sc[(i, j)] = prod
        if involution is not None and not isinstance(involution, RatMatrix):
            involution = RatMatrix.from_dense(involution)
        return cls(n, tuple(labels or (f"e{i + 1}" for i in range(n))), sc, unit, involution, name)

    @property
    def has_unit(self) -> bool:
        return self.unit is not None

    @property
    def has_involution(self) -> bool:
        return self.involution is not None

    def basis(self, i: int) -> "Element":
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return Element(self, tuple(v))

    def element(self, coords: Iterable[object]) -> "Element":
        return Element(self, _frac_tuple(coords))

    def zero(self) -> "Element":
        return Element(self, (Fraction(0),) * self.dim)

    def one(self) -> "Element":
        if self.unit is None:
            raise NoUnit(self.name or "algebra has no unit")
        return Element(self, self.unit)

    def product(self, i: int, j: int) -> dict[int, Fraction]:
        return dict(self.sc.get((i, j), {}))

    def with_name(self, name: str) -> "Algebra":
        return Algebra(self.dim, self.labels, self.sc, self.unit, self.involution, name)

    @cached_property
    def involution_dense(self) -> list[list[Fraction]]:
        if self.involution is None:
            raise NoInvolution(self.name or "algebra has no involution")
        return self.involution.to_dense()

    # -- integer tensors -------------------------------------------------------

    @cached_property
    def int_tensor(self) -> tuple[np.ndarray, int]:
        """``(C, d)`` with ``c[i][j][k] == C[i, j, k] / d``."""
        n = self.dim
        items = [(i, j, k, v) for (i, j), prod in self.sc.items() for k, v in prod.items()]
        nums, den = _scaled([v for *_, v in items])
        arr = _int_array([0] * n**3, (n, n, n))
        for (i, j, k, _), num in zip(items, nums):
            arr[i, j, k] = num
        return arr, den

    @cached_property
    def int_involution(self) -> tuple[np.ndarray, int]:
        if self.involution is None:
            raise NoInvolution(self.name or "algebra has no involution")
        m = self.involution
        arr = _int_array([0] * self.dim**2, (self.dim, self.dim))
        for r, c, v in zip(m.rows, m.cols, m.nums):
            arr[r, c] = int(v)
        return arr, m.den

    @cached_property
    def int_unit(self) -> tuple[np.ndarray, int]:
        if self.unit is None:
            raise NoUnit(self.name or "algebra has no unit")
        nums, den = _scaled(self.unit)
        return _int_array(nums, (self.dim,)), den

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        sc = [
            [i, j, k, v.numerator, v.denominator]
            for (i, j) in sorted(self.sc)
            for k, v in sorted(self.sc[(i, j)].items())
        ]
        unit = None if self.unit is None else [[v.numerator, v.denominator] for v in self.unit]
        inv = None
        if self.involution is not None:
            inv = [[r, c, v.numerator, v.denominator] for r, c, v in self.involution.entries()]
        return {"dim": self.dim, "labels": list(self.labels), "sc": sc, "unit": unit, "involution": inv}

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: Mapping, name: str = "") -> "Algebra":
        n = int(data["dim"])
        sc: dict[tuple[int, int], dict[int, Fraction]] = {}
        for i, j, k, num, den in data["sc"]:
            sc.setdefault((i, j), {})[k] = Fraction(num, den)
        unit = None if data.get("unit") is None else tuple(Fraction(a, b) for a, b in data["unit"])
        inv = None
        if data.get("involution") is not None:
            inv = RatMatrix.from_entries(n, n, ((i, j, Fraction(a, b)) for i, j, a, b in data["involution"]))
        return cls(n, tuple(data["labels"]), sc, unit, inv, name)

    @classmethod
    def from_json(cls, text: str, name: str = "") -> "Algebra":
        return cls.from_dict(json.loads(text), name)

    def __repr__(self) -> str:
        return f"Algebra({self.name or '?'}, dim={self.dim})"


@dataclass(frozen=True)
class Element:
    algebra: Algebra = field(repr=False)
    coords: Coords

    def __post_init__(self):
        if len(self.coords) != self.algebra.dim:
            raise ValueError(f"{len(self.coords)} coordinates for dimension {self.algebra.dim}")

    def _same(self, other: "Element") -> None:
        if other.algebra is not self.algebra:
            raise AlgebraMismatch("elements belong to different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Element":
        return Element(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, Element):
            return mul(self.algebra, self, other)
        c = Fraction(other)
        return Element(self.algebra, tuple(c * a for a in self.coords))

    def __rmul__(self, other):
        c = Fraction(other)
        return Element(self.algebra, tuple(c * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        terms = [f"{c}*{lab}" for c, lab in zip(self.coords, self.algebra.labels) if c]
        return " + ".join(terms) or "0"


@dataclass(frozen=True)
class LinearMap:
    """Endomorphism of an ``n``-dimensional algebra; column ``j`` is the image of ``e_j``."""

    matrix: RatMatrix

    def __post_init__(self):
        if self.matrix.nrows != self.matrix.ncols:
            raise ValueError("linear map matrix must be square")

    @property
    def n(self) -> int:
        return self.matrix.nrows

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]]) -> "LinearMap":
        return cls(RatMatrix.from_dense(rows))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[object]]) -> "LinearMap":
        n = len(columns)
        return cls(RatMatrix.from_entries(n, n, ((i, j, v) for j, col in enumerate(columns) for i, v in enumerate(col) if v)))

    @classmethod
    def from_vector(cls, v: Sequence[object], n: int) -> "LinearMap":
        """Inverse of :meth:`to_vector`: entry ``(m, k)`` sits at position ``m * n + k``."""
        if len(v) != n * n:
            raise ValueError("vector length must be n**2")
        return cls(RatMatrix.from_entries(n, n, ((idx // n, idx % n, x) for idx, x in enumerate(v) if x)))

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls(RatMatrix.identity(n))

    @classmethod
    def zero(cls, n: int) -> "LinearMap":
        return cls(RatMatrix.zeros(n, n))

    @cached_property
    def dense(self) -> list[list[Fraction]]:
        return self.matrix.to_dense()

    def to_vector(self) -> list[Fraction]:
        return [x for row in self.dense for x in row]

    def column(self, j: int) -> list[Fraction]:
        return [row[j] for row in self.dense]

    def __call__(self, x: Element) -> Element:
        return Element(x.algebra, tuple(self.matrix.matvec(x.coords)))

    def apply(self, v: Sequence[object]) -> list[Fraction]:
        return self.matrix.matvec(v)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        a, b = self.dense, other.dense
        n = self.n
        bt = list(zip(*b))
        return LinearMap.from_dense([[sum((x * y for x, y in zip(a[i], bt[j]) if x and y), Fraction(0)) for j in range(n)] for i in range(n)])

    def __add__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap.from_dense([[x + y for x, y in zip(r, s)] for r, s in zip(self.dense, other.dense)])

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap.from_dense([[x - y for x, y in zip(r, s)] for r, s in zip(self.dense, other.dense)])

    def __rmul__(self, c) -> "LinearMap":
        c = Fraction(c)
        return LinearMap.from_dense([[c * x for x in r] for r in self.dense])

    def bracket(self, other: "LinearMap") -> "LinearMap":
        return self @ other - other @ self

    def is_zero(self) -> bool:
        return self.matrix.nnz == 0

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LinearMap) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)


# -- products and operators -----------------------------------------------------


def _check(a: Algebra, *xs: Element) -> None:
    for x in xs:
        if x.algebra is not a:
            raise AlgebraMismatch(f"element does not belong to {a.name or 'this algebra'}")


def _mul_coords(a: Algebra, x: Sequence[Fraction], y: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * a.dim
    xs = [(i, v) for i, v in enumerate(x) if v]
    ys = [(j, v) for j, v in enumerate(y) if v]
    sc = a.sc
    for i, xi in xs:
        for j, yj in ys:
            prod = sc.get((i, j))
            if prod:
                s = xi * yj
                for k, c in prod.items():
                    out[k] += s * c
    return out


def mul(a: Algebra, x: Element, y: Element) -> Element:
    """Bilinear product ``x y``."""
    _check(a, x, y)
    return Element(a, tuple(_mul_coords(a, x.coords, y.coords)))


def involve(a: Algebra, x: Element) -> Element:
    if a.involution is None:
        raise NoInvolution(a.name or "algebra has no involution")
    _check(a, x)
    return Element(a, tuple(a.involution.matvec(x.coords)))


def commutator(a: Algebra, x: Element, y: Element) -> Element:
    return mul(a, x, y) - mul(a, y, x)


def associator(a: Algebra, x: Element, y: Element, z: Element) -> Element:
    return mul(a, mul(a, x, y), z) - mul(a, x, mul(a, y, z))


def left_mul(a: Algebra, z: Element) -> LinearMap:
    """Matrix of ``x -> z x``."""
    _check(a, z)
    return LinearMap.from_columns([_mul_coords(a, z.coords, a.basis(j).coords) for j in range(a.dim)])


def right_mul(a: Algebra, z: Element) -> LinearMap:
    """Matrix of ``x -> x z``."""
    _check(a, z)
    return LinearMap.from_columns([_mul_coords(a, a.basis(j).coords, z.coords) for j in range(a.dim)])


def v_operator(a: Algebra, x: Element, y: Element) -> LinearMap:
    """Matrix of ``z -> (x ybar) z + (z ybar) x - (z xbar) y``."""
    _check(a, x, y)
    xb, yb = involve(a, x).coords, involve(a, y).coords
    xyb = _mul_coords(a, x.coords, yb)
    cols = []
    for j in range(a.dim):
        z = a.basis(j).coords
        t1 = _mul_coords(a, xyb, z)
        t2 = _mul_coords(a, _mul_coords(a, z, yb), x.coords)
        t3 = _mul_coords(a, _mul_coords(a, z, xb), y.coords)
        cols.append([p + q - r for p, q, r in zip(t1, t2, t3)])
    return LinearMap.from_columns(cols)


def t_operator(a: Algebra, z: Element) -> LinearMap:
    """``T_z = V_{z,1}``."""
    if a.involution is None:
        raise NoInvolution(a.name or "algebra has no involution")
    return v_operator(a, z, a.one())


# -- identity checks --------------------------------------------------------------


@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of an identity check; falsy on failure, with the first violating basis tuple."""

    name: str
    holds: bool
    witness: tuple[int, ...] | None = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.holds


def check_unit(a: Algebra) -> IdentityCheck:
    """``1 e_i = e_i = e_i 1`` for every basis vector."""
    if a.unit is None:
        raise NoUnit(a.name or "algebra has no unit")
    C, d = a.int_tensor
    u, du = a.int_unit
    left = exact_einsum("i,ijk->jk", u, C)
    right = exact_einsum("j,ijk->ik", u, C)
    eye = exact_scale(np.eye(a.dim, dtype=np.int64), d * du)
    for j in range(a.dim):
        if np.any(left[j] != eye[j]) or np.any(right[j] != eye[j]):
            return IdentityCheck("unit", False, (j,), 2 * a.dim)
    return IdentityCheck("unit", True, None, 2 * a.dim)


def check_involution(a: Algebra) -> IdentityCheck:
    """``J^2 = 1``, ``J(xy) = J(y) J(x)`` on basis pairs, and ``J(1) = 1`` when unital."""
    if a.involution is None:
        raise NoInvolution(a.name or "algebra has no involution")
    n = a.dim
    J, dj = a.int_involution
    sq = exact_einsum("ij,jk->ik", J, J)
    if np.any(sq != exact_scale(np.eye(n, dtype=np.int64), dj * dj)):
        bad = np.argwhere(sq != exact_scale(np.eye(n, dtype=np.int64), dj * dj))[0]
        return IdentityCheck("involution", False, tuple(int(x) for x in bad), n * n)
    C, _ = a.int_tensor
    lhs = exact_einsum("ijk,mk->ijm", C, J)  # J(e_i e_j)
    tmp = exact_einsum("abm,aj->bjm", C, J)  # sum_a J[a,j] e_a e_b
    rhs = exact_einsum("bjm,bi->ijm", tmp, J)  # J(e_j) J(e_i)
    lhs = exact_scale(lhs, dj)
    diff = np.argwhere(lhs != rhs)
    if len(diff):
        i, j, _ = diff[0]
        return IdentityCheck("involution", False, (int(i), int(j)), n * n)
    if a.unit is not None:
        u, _ = a.int_unit
        if np.any(exact_einsum("ij,j->i", J, u) != exact_scale(u, dj)):
            return IdentityCheck("involution", False, (-1,), n * n + 1)
    return IdentityCheck("involution", True, None, n * n)


def _v_tensor(C: np.ndarray, J: np.ndarray) -> np.ndarray:
    """``V[a, b, m, z]``: coordinate ``m`` of ``V_{e_a, e_b}(e_z)`` (scale ``d^2 * dj``)."""
    P = exact_einsum("ack,cb->abk", C, J)  # e_a conj(e_b)
    t1 = exact_einsum("abk,kzm->abmz", P, C)
    t2 = exact_einsum("zbk,kam->abmz", P, C)
    t3 = exact_einsum("zak,kbm->abmz", P, C)
    return t1 + t2 - t3


def check_structurable(a: Algebra) -> IdentityCheck:
    """``[T_z, V_{x,y}] = V_{T_z x, y} - V_{x, T_zbar y}`` on all basis ``x, y, z``, applied to every ``w``.

    The witness is the lexicographically first violating ``(x, y, z, w)``.
    """
    if a.unit is None:
        raise NoUnit(a.name or "algebra has no unit")
    n = a.dim
    C, _ = a.int_tensor
    J, dj = a.int_involution
    u, _ = a.int_unit
    V = _v_tensor(C, J)
    T = exact_einsum("b,abmz->amz", u, V)  # T[z] as a matrix
    Tbar = exact_einsum("Zz,Zmw->zmw", J, T)
    first = None
    for z in range(n):
        Tz = T[z]
        lhs = exact_einsum("mk,abkw->abmw", Tz, V) - exact_einsum("abmk,kw->abmw", V, Tz)
        r1 = exact_einsum("kx,kbmw->xbmw", Tz, V)
        r2 = exact_einsum("kb,akmw->abmw", Tbar[z], V)
        bad = exact_scale(lhs - r1, dj) + r2
        hits = np.argwhere(bad != 0)
        if len(hits):
            x, y, _, w = min((int(h[0]), int(h[1]), int(h[3]), int(h[2])) for h in hits)
            cand = (x, y, z, w)
            if first is None or cand < first:
                first = cand
    return IdentityCheck("structurable", first is None, first, n**4)


def check_jordan_operator_identity(a: Algebra) -> IdentityCheck:
    """``[L_c, V_{a,b}] = V_{ca,b} - V_{a,cb}`` on basis triples (identity involution)."""
    n = a.dim
    C, _ = a.int_tensor
    J, dj = a.int_involution
    V = _v_tensor(C, J)
    L = np.transpose(C, (0, 2, 1))  # L[c][m, w] = coeff m of e_c e_w
    first = None
    for c in range(n):
        lhs = exact_einsum("mk,abkw->abmw", L[c], V) - exact_einsum("abmk,kw->abmw", V, L[c])
        r1 = exact_einsum("cak,kbmw->abmw", C[c : c + 1], V)
        r2 = exact_einsum("cbk,akmw->abmw", C[c : c + 1], V)
        bad = lhs - (r1 - r2)
        hits = np.argwhere(bad != 0)
        if len(hits):
            x, y, _, w = min((int(h[0]), int(h[1]), int(h[3]), int(h[2])) for h in hits)
            cand = (x, y, c, w)
            if first is None or cand < first:
                first = cand
    return IdentityCheck("jordan-operator", first is None, first, n**4)


def validate(a: Algebra) -> Algebra:
    """Raise :class:`InvariantViolation` unless the unit and involution axioms hold."""
    if a.unit is not None:
        res = check_unit(a)
        if not res:
            raise InvariantViolation(f"{a.name}: unit fails on basis vector {res.witness}")
    if a.involution is not None:
        res = check_involution(a)
        if not res:
            raise InvariantViolation(f"{a.name}: involution axioms fail at {res.witness}")
    return a


# -- decompositions and combinations ------------------------------------------


def hermitian_skew_split(a: Algebra) -> tuple[list[list[Fraction]], list[list[Fraction]]]:
    """Bases of the symmetric (+1) and skew (-1) eigenspaces of the involution."""
    if a.involution is None:
        raise NoInvolution(a.name or "algebra has no involution")
    n = a.dim
    Jd = a.involution_dense
    plus = RatMatrix.from_dense([[Jd[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)])
    minus = RatMatrix.from_dense([[Jd[i][j] + (1 if i == j else 0) for j in range(n)] for i in range(n)])
    return kernel_basis(plus), kernel_basis(minus)


def direct_sum(a: Algebra, b: Algebra, name: str = "") -> Algebra:
    na, nb = a.dim, b.dim
    sc = {k: dict(v) for k, v in a.sc.items()}
    for (i, j), prod in b.sc.items():
        sc[(i + na, j + na)] = {k + na: v for k, v in prod.items()}
    unit = None
    if a.unit is not None and b.unit is not None:
        unit = a.unit + b.unit
    inv = None
    if a.involution is not None and b.involution is not None:
        entries = [(r, c, v) for r, c, v in a.involution.entries()]
        entries += [(r + na, c + na, v) for r, c, v in b.involution.entries()]
        inv = RatMatrix.from_entries(na + nb, na + nb, entries)
    labels = tuple(f"{a.name or 'A'}:{x}" for x in a.labels) + tuple(f"{b.name or 'B'}:{x}" for x in b.labels)
    return Algebra(na + nb, labels, sc, unit, inv, name or f"sum-{a.name}-{b.name}")


def tensor_product(a: Algebra, b: Algebra, name: str = "") -> Algebra:
    """``(x1 (x) x2)(y1 (x) y2) = x1 y1 (x) x2 y2`` on basis ``e_i (x) f_j`` at index ``i * dim(b) + j``."""
    na, nb = a.dim, b.dim
    sc: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i1, j1), pa in a.sc.items():
        for (i2, j2), pb in b.sc.items():
            prod = {}
            for k1, v1 in pa.items():
                for k2, v2 in pb.items():
                    prod[k1 * nb + k2] = v1 * v2
            sc[(i1 * nb + i2, j1 * nb + j2)] = prod
    unit = None
    if a.unit is not None and b.unit is not None:
        unit = tuple(x * y for x in a.unit for y in b.unit)
    inv = None
    if a.involution is not None and b.involution is not None:
        inv = RatMatrix.from_entries(
            na * nb,
            na * nb,
            (
                (r1 * nb + r2, c1 * nb + c2, v1 * v2)
                for r1, c1, v1 in a.involution.entries()
                for r2, c2, v2 in b.involution.entries()
            ),
        )
    labels = tuple(f"{x}(x){y}" for x in a.labels for y in b.labels)
    return Algebra(na * nb, labels, sc, unit, inv, name or f"tensor-{a.name}-{b.name}")


def find_unit(a: Algebra) -> Coords | None:
    """Solve ``u e_j = e_j = e_j u`` for a two-sided unit; None if there is none."""
    n = a.dim
    C, d = a.int_tensor
    # unknown u plus one slack column for the right-hand side
    entries = []
    row = 0
    for side in ("left", "right"):
        for j in range(n):
            for k in range(n):
                for i in range(n):
                    v = C[i, j, k] if side == "left" else C[j, i, k]
                    if v:
                        entries.append((row, i, Fraction(int(v), d)))
                if j == k:
                    entries.append((row, n, Fraction(-1)))
                row += 1
    sys_ = RatMatrix.from_entries(row, n + 1, entries)
    for v in kernel_basis(sys_):
        if v[n] != 0:
            return tuple(x / v[n] for x in v[:n])
    return None
