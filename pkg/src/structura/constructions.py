"""Builders for the concrete algebra families.

Index conventions:

* matrix algebras use ``E_ab`` at ``a * n + b``;
* the hermitian-form algebra puts ``M_n`` first and the column space after it;
* the 2x2 triple algebra orders its basis ``alpha, J, J', beta``;
* T(C) puts the 28 symmetric tensors ``h_ab`` (``a <= b``) first, then the 7 skew elements.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .algebra import (
    Algebra,
    Element,
    IdentityCheck,
    associator,
    check_involution,
    find_unit,
    hermitian_skew_split,
    involve,
    mul,
    validate,
)
from .linalg import RatMatrix, kernel_basis


class NotComposition(ValueError):
    """Doubling input whose norm ``x xbar`` is not a scalar multiple of the unit."""


class DimensionLimit(ValueError):
    """Doubling would go past dimension 8."""


class DegenerateT(ValueError):
    """The pairing ``T`` of an admissible triple is singular."""


class NotAdmissible(ValueError):
    """The triple fails the sharp identities or has a zero cubic form."""


class NotOctonions(ValueError):
    """Input is not an 8-dimensional alternative composition algebra with its standard involution."""


class Inconsistent(ValueError):
    """No bilinear form satisfies the Malcev form identity."""


def _sc_from_dict(entries: dict[tuple[int, int, int], Fraction]) -> dict[tuple[int, int], dict[int, Fraction]]:
    sc: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j, k), v in entries.items():
        if v:
            sc.setdefault((i, j), {})[k] = Fraction(v)
    return sc


def _diag(values) -> RatMatrix:
    return RatMatrix.from_entries(len(values), len(values), ((i, i, v) for i, v in enumerate(values)))


# -- composition algebras -------------------------------------------------------


def ground_field() -> Algebra:
    return Algebra(1, ("e1",), {(0, 0): {0: Fraction(1)}}, (Fraction(1),), RatMatrix.identity(1), "field")


def _norm_is_scalar(a: Algebra, x: Element) -> bool:
    nx = mul(a, x, involve(a, x)).coords
    u = a.unit
    # nx must be a multiple of the unit
    ref = next(i for i, v in enumerate(u) if v)
    c = nx[ref] / u[ref]
    return all(v == c * w for v, w in zip(nx, u))


def is_composition_candidate(a: Algebra) -> bool:
    """``x xbar`` lies in ``F 1`` for basis vectors and sums of two basis vectors."""
    if a.unit is None or a.involution is None:
        return False
    n = a.dim
    for i in range(n):
        if not _norm_is_scalar(a, a.basis(i)):
            return False
        for j in range(i + 1, n):
            if not _norm_is_scalar(a, a.basis(i) + a.basis(j)):
                return False
    return True


def cayley_dickson(a: Algebra, mu=-1, name: str = "") -> Algebra:
    """Double ``a``: ``(a,b)(c,d) = (ac + mu dbar b, da + b cbar)``, ``(a,b)bar = (abar, -b)``."""
    mu = Fraction(mu)
    if mu == 0:
        raise NotComposition("doubling parameter must be nonzero")
    if a.dim >= 8:
        raise DimensionLimit(f"doubling a {a.dim}-dimensional algebra leaves the composition range")
    if not is_composition_candidate(a):
        raise NotComposition(f"{a.name or 'input'} has a non-scalar norm")
    n = a.dim
    J = a.involution_dense
    # conj(e_j) = sum_r J[r][j] e_r
    conj = [[(r, J[r][j]) for r in range(n) if J[r][j]] for j in range(n)]
    entries: dict[tuple[int, int, int], Fraction] = {}

    def add(i, j, k, v):
        entries[(i, j, k)] = entries.get((i, j, k), Fraction(0)) + v

    for (i, j), prod in a.sc.items():
        for k, v in prod.items():
            add(i, j, k, v)  # (e_i,0)(e_j,0) = (e_i e_j, 0)
    for i in range(n):
        for j in range(n):
            # (e_i,0)(0,e_j) = (0, e_j e_i)
            for k, v in a.sc.get((j, i), {}).items():
                add(i, n + j, n + k, v)
            # (0,e_i)(e_j,0) = (0, e_i conj(e_j))
            for r, w in conj[j]:
                for k, v in a.sc.get((i, r), {}).items():
                    add(n + i, j, n + k, w * v)
            # (0,e_i)(0,e_j) = (mu conj(e_j) e_i, 0)
            for r, w in conj[j]:
                for k, v in a.sc.get((r, i), {}).items():
                    add(n + i, n + j, k, mu * w * v)
    unit = a.unit + (Fraction(0),) * n
    inv = RatMatrix.from_entries(
        2 * n, 2 * n, [(r, c, v) for r, c, v in a.involution.entries()] + [(n + i, n + i, -1) for i in range(n)]
    )
    labels = tuple(f"e{i + 1}" for i in range(2 * n))
    return validate(Algebra(2 * n, labels, _sc_from_dict(entries), unit, inv, name or f"cd{2 * n}"))


def complex_numbers() -> Algebra:
    return cayley_dickson(ground_field(), -1, "complex")


def quaternions() -> Algebra:
    return cayley_dickson(complex_numbers(), -1, "quaternion")


def octonions() -> Algebra:
    return cayley_dickson(quaternions(), -1, "octonion")


# row k lists the ordered pairs (i, j) with e_i e_j = e_k
_OCTONION_TABLE = {
    2: ((5, 6), (7, 8), (3, 4)),
    3: ((7, 6), (4, 2), (8, 5)),
    4: ((2, 3), (6, 8), (7, 5)),
    5: ((6, 2), (4, 7), (3, 8)),
    6: ((2, 5), (8, 4), (3, 7)),
    7: ((5, 4), (8, 2), (6, 3)),
    8: ((2, 7), (4, 6), (5, 3)),
}


def octonion_table() -> Algebra:
    """Octonions on ``e1..e8`` with ``e1`` the unit, ``e_i^2 = -e1`` and anticommuting imaginary units."""
    entries: dict[tuple[int, int, int], Fraction] = {}
    for i in range(8):
        entries[(0, i, i)] = Fraction(1)
        entries[(i, 0, i)] = Fraction(1)
    for i in range(1, 8):
        entries[(i, i, 0)] = Fraction(-1)
    for k, pairs in _OCTONION_TABLE.items():
        for i, j in pairs:
            entries[(i - 1, j - 1, k - 1)] = Fraction(1)
            entries[(j - 1, i - 1, k - 1)] = Fraction(-1)
    inv = _diag([1] + [-1] * 7)
    unit = (Fraction(1),) + (Fraction(0),) * 7
    labels = tuple(f"e{i}" for i in range(1, 9))
    return validate(Algebra(8, labels, _sc_from_dict(entries), unit, inv, "octonion-table"))


# -- matrix families ----------------------------------------------------------------


def _matrix_entries(n: int, scale=Fraction(1)) -> dict[tuple[int, int, int], Fraction]:
    # E_ab E_bd = E_ad
    return {(a * n + b, b * n + d, a * n + d): scale for a in range(n) for b in range(n) for d in range(n)}


def _transpose(n: int) -> RatMatrix:
    return RatMatrix.from_entries(n * n, n * n, ((b * n + a, a * n + b, 1) for a in range(n) for b in range(n)))


def _identity_unit(n: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(1 if a == b else 0) for a in range(n) for b in range(n))


def _matrix_labels(n: int) -> tuple[str, ...]:
    return tuple(f"E{a + 1}{b + 1}" for a in range(n) for b in range(n))


def matrix_involution_algebra(n: int) -> Algebra:
    """``M_n`` with the transpose involution."""
    if n < 1:
        raise ValueError("matrix size must be at least 1")
    sc = _sc_from_dict(_matrix_entries(n))
    return validate(Algebra(n * n, _matrix_labels(n), sc, _identity_unit(n), _transpose(n), f"matrix-inv-{n}"))


def jordan_matrix(n: int) -> Algebra:
    """``M_n`` with ``x o y = (xy + yx)/2`` and the identity involution."""
    if n < 1:
        raise ValueError("matrix size must be at least 1")
    entries: dict[tuple[int, int, int], Fraction] = {}
    for (i, j, k), v in _matrix_entries(n, Fraction(1, 2)).items():
        entries[(i, j, k)] = entries.get((i, j, k), 0) + v
        entries[(j, i, k)] = entries.get((j, i, k), 0) + v
    sc = _sc_from_dict(entries)
    return validate(Algebra(n * n, _matrix_labels(n), sc, _identity_unit(n), RatMatrix.identity(n * n), f"jordan-{n}"))


def hermitian_form_algebra(n: int) -> Algebra:
    """``M_n (+) F^n`` with ``(e1,w1)(e2,w2) = (e1 e2 + w2 w1^T, e2 w1 + e1^T w2)``.

    The involution transposes the matrix part and fixes the vector part.
    """
    if n < 1:
        raise ValueError("matrix size must be at least 1")
    m = n * n
    entries = _matrix_entries(n)
    one = Fraction(1)
    for c in range(n):
        for d in range(n):
            entries[(m + c, m + d, d * n + c)] = one  # h(w_d, w_c) = E_dc
        for a in range(n):
            for b in range(n):
                if a == c:
                    entries[(a * n + b, m + c, m + b)] = one  # E_ab^T w_c = E_ba w_a = w_b
                if b == c:
                    entries[(m + c, a * n + b, m + a)] = one  # E_ab w_b = w_a
    inv = RatMatrix.from_entries(
        m + n, m + n, [(b * n + a, a * n + b, 1) for a in range(n) for b in range(n)] + [(m + c, m + c, 1) for c in range(n)]
    )
    unit = _identity_unit(n) + (Fraction(0),) * n
    labels = _matrix_labels(n) + tuple(f"w{c + 1}" for c in range(n))
    return validate(Algebra(m + n, labels, _sc_from_dict(entries), unit, inv, f"hermitian-{n}"))


# -- admissible triples --------------------------------------------------------------


@dataclass(frozen=True)
class AdmissibleTripleData:
    """``T`` is a ``dimJ x dimJ'`` matrix; ``N[a][b][c]`` and ``Np[a][b][c]`` are symmetric trilinear coefficients."""

    dimJ: int
    dimJp: int
    T: tuple
    N: tuple
    Np: tuple

    @staticmethod
    def one_dimensional(t=3, n=6) -> "AdmissibleTripleData":
        """The triple ``T(j,k') = t j k'`` and ``N = N' = n j k l`` on one-dimensional spaces."""
        return AdmissibleTripleData(1, 1, ((Fraction(t),),), (((Fraction(n),),),), (((Fraction(n),),),))


@dataclass(frozen=True)
class TripleProducts:
    """Coefficients of ``e_a x e_b`` in ``J'`` (``cross``) and ``f_a x f_b`` in ``J`` (``cross_p``)."""

    cross: list
    cross_p: list


def _cross_products(d: AdmissibleTripleData) -> TripleProducts:
    T = sympy.Matrix(d.dimJ, d.dimJp, lambda i, j: sympy.Rational(d.T[i][j]))
    if T.rows != T.cols or T.det() == 0:
        raise DegenerateT("the pairing T is singular")
    Tinv = T.inv()
    # T(l, j x k) = N(j,k,l): sum_c T[l][c] (j x k)_c = N[j][k][l]
    cross = [[[sympy.Rational(0)] * d.dimJp for _ in range(d.dimJ)] for _ in range(d.dimJ)]
    for a in range(d.dimJ):
        for b in range(d.dimJ):
            rhs = sympy.Matrix([sympy.Rational(d.N[a][b][l]) for l in range(d.dimJ)])
            sol = Tinv * rhs
            cross[a][b] = [sol[c] for c in range(d.dimJp)]
    # T(j' x k', l') = N'(j',k',l'): sum_c (j' x k')_c T[c][l'] = N'[j'][k'][l']
    TinvT = T.T.inv()
    cross_p = [[[sympy.Rational(0)] * d.dimJ for _ in range(d.dimJp)] for _ in range(d.dimJp)]
    for a in range(d.dimJp):
        for b in range(d.dimJp):
            rhs = sympy.Matrix([sympy.Rational(d.Np[a][b][l]) for l in range(d.dimJp)])
            sol = TinvT * rhs
            cross_p[a][b] = [sol[c] for c in range(d.dimJ)]
    return TripleProducts(cross, cross_p)


def _sharp_identity(dim_src: int, dim_dst: int, cross, cross_back, cubic) -> bool:
    """``(j#)# == N(j,j,j) j / 6`` as polynomials in the coordinates of ``j``."""
    xs = sympy.symbols(f"x0:{dim_src}")
    sharp = [
        sympy.expand(sum(cross[a][b][c] * xs[a] * xs[b] for a in range(dim_src) for b in range(dim_src)) / 2)
        for c in range(dim_dst)
    ]
    sharp2 = [
        sympy.expand(sum(cross_back[a][b][c] * sharp[a] * sharp[b] for a in range(dim_dst) for b in range(dim_dst)) / 2)
        for c in range(dim_src)
    ]
    nval = sum(
        sympy.Rational(cubic[a][b][c]) * xs[a] * xs[b] * xs[c]
        for a in range(dim_src)
        for b in range(dim_src)
        for c in range(dim_src)
    )
    return all(sympy.expand(s2 - nval * xs[c] / 6) == 0 for c, s2 in enumerate(sharp2))


def check_admissible_triple(d: AdmissibleTripleData) -> IdentityCheck:
    """Nontrivial cubic forms and both sharp identities, checked symbolically.

    The witness is ``(0,)`` for a zero form, ``(1,)`` when the ``J`` identity fails
    and ``(2,)`` when the ``J'`` identity fails.
    """
    prods = _cross_products(d)
    flat = lambda t: [x for p in t for q in p for x in q]  # noqa: E731
    if not any(flat(d.N)) or not any(flat(d.Np)):
        return IdentityCheck("admissible-triple", False, (0,), 0)
    if not _sharp_identity(d.dimJ, d.dimJp, prods.cross, prods.cross_p, d.N):
        return IdentityCheck("admissible-triple", False, (1,), 1)
    if not _sharp_identity(d.dimJp, d.dimJ, prods.cross_p, prods.cross, d.Np):
        return IdentityCheck("admissible-triple", False, (2,), 2)
    return IdentityCheck("admissible-triple", True, None, 2)


def admissible_triple_algebra(d: AdmissibleTripleData, name: str = "triple") -> Algebra:
    """2x2 formal matrices ``[[alpha, j], [j', beta]]`` over an admissible triple."""
    check = check_admissible_triple(d)
    if not check:
        raise NotAdmissible(f"triple fails admissibility (stage {check.witness[0]})")
    prods = _cross_products(d)
    nj, njp = d.dimJ, d.dimJp
    A, B = 0, 1 + nj + njp
    Jx = lambda a: 1 + a  # noqa: E731
    Jp = lambda a: 1 + nj + a  # noqa: E731
    one = Fraction(1)
    entries: dict[tuple[int, int, int], Fraction] = {}

    def add(i, j, k, v):
        v = Fraction(int(sympy.numer(v)), int(sympy.denom(v))) if not isinstance(v, (int, Fraction)) else Fraction(v)
        if v:
            entries[(i, j, k)] = entries.get((i, j, k), Fraction(0)) + v

    add(A, A, A, one)  # alpha gamma
    add(B, B, B, one)  # beta delta
    for a in range(nj):
        add(A, Jx(a), Jx(a), one)  # alpha k
        add(Jx(a), B, Jx(a), one)  # delta j
        for b in range(njp):
            add(Jx(a), Jp(b), A, d.T[a][b])  # T(j, k') in the top-left corner
            add(Jp(b), Jx(a), B, d.T[a][b])  # T(k, j') in the bottom-right corner
        for b in range(nj):
            for c in range(njp):
                add(Jx(a), Jx(b), Jp(c), prods.cross[a][b][c])  # j x k
    for a in range(njp):
        add(Jp(a), A, Jp(a), one)  # gamma j'
        add(B, Jp(a), Jp(a), one)  # beta k'
        for b in range(njp):
            for c in range(nj):
                add(Jp(a), Jp(b), Jx(c), prods.cross_p[a][b][c])  # j' x k'
    n = 2 + nj + njp
    inv = RatMatrix.from_entries(n, n, [(A, B, 1), (B, A, 1)] + [(i, i, 1) for i in range(1, n - 1)])
    unit = tuple(Fraction(1 if i in (A, B) else 0) for i in range(n))
    labels = ("alpha",) + tuple(f"j{a + 1}" for a in range(nj)) + tuple(f"j'{a + 1}" for a in range(njp)) + ("beta",)
    return validate(Algebra(n, labels, _sc_from_dict(entries), unit, inv, name))


# -- octonion-derived algebras ------------------------------------------------------------


def check_octonions(c: Algebra) -> tuple[list[list[Fraction]], list[list[Fraction]]]:
    """Return the (H, S) split of ``c``, or raise :class:`NotOctonions`."""
    if c.dim != 8 or c.unit is None or c.involution is None:
        raise NotOctonions("need an 8-dimensional unital algebra with involution")
    if not check_involution(c):
        raise NotOctonions("involution axioms fail")
    H, S = hermitian_skew_split(c)
    if len(H) != 1 or len(S) != 7:
        raise NotOctonions("involution is not the standard one")
    if not is_composition_candidate(c):
        raise NotOctonions("norm is not scalar")
    basis = [c.basis(i) for i in range(8)]
    for x in basis:
        for y in basis:
            if not associator(c, x, x, y).is_zero() or not associator(c, y, x, x).is_zero():
                raise NotOctonions("algebra is not alternative")
    return H, S


def _skew_coordinates(S: list[list[Fraction]]):
    """Solve coordinates in the skew basis ``S`` for vectors known to lie in its span."""
    # S comes out of a kernel computation in free-variable form, so each vector
    # has a coordinate where it alone is nonzero
    piv = [next(i for i, x in enumerate(v) if x and all(w[i] == 0 for w in S if w is not v)) for v in S]

    def coords(vec):
        out = [vec[p] / S[k][p] for k, p in enumerate(piv)]
        recon = [sum(out[k] * S[k][i] for k in range(len(S))) for i in range(len(vec))]
        if recon != list(vec):
            raise NotOctonions("commutator left the skew part")
        return out

    return coords


def malcev_minus(c: Algebra) -> Algebra:
    """Skew elements of ``c`` under the commutator (basis = skew eigenvectors of the involution)."""
    _, S = check_octonions(c)
    coords = _skew_coordinates(S)
    elems = [c.element(v) for v in S]
    entries: dict[tuple[int, int, int], Fraction] = {}
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            br = (mul(c, x, y) - mul(c, y, x)).coords
            for k, v in enumerate(coords(br)):
                if v:
                    entries[(i, j, k)] = v
    labels = tuple(
        c.labels[next(i for i, x in enumerate(v) if x)] if sum(1 for x in v if x) == 1 else f"s{k + 1}"
        for k, v in enumerate(S)
    )
    return Algebra(7, labels, _sc_from_dict(entries), None, None, f"{c.name}-minus" if c.name else "malcev")


@dataclass(frozen=True)
class MalcevForm:
    gram: tuple[tuple[Fraction, ...], ...]

    def __call__(self, x, y) -> Fraction:
        return sum((x[i] * self.gram[i][j] * y[j] for i in range(len(x)) for j in range(len(y))), Fraction(0))

    def is_diagonal(self) -> bool:
        return all(v == 0 for i, row in enumerate(self.gram) for j, v in enumerate(row) if i != j)


def malcev_form(s: Algebra) -> MalcevForm:
    """Symmetric form with ``[[x,y],y] = (y,y)x - (x,y)y``, solved from the polarized identity.

    Polarizing in ``y`` gives ``[[x,y],z] + [[x,z],y] = 2(y,z)x - (x,y)z - (x,z)y`` for basis
    ``x, y, z``; this is linear in the unknown Gram entries ``g_ab`` (``a <= b``).
    """
    n = s.dim
    pairs = [(a, b) for a in range(n) for b in range(a, n)]
    col = {p: k for k, p in enumerate(pairs)}
    g = lambda a, b: col[(min(a, b), max(a, b))]  # noqa: E731
    rhs_col = len(pairs)
    rows = []
    basis = [s.basis(i) for i in range(n)]
    for x, y, z in itertools.product(range(n), repeat=3):
        if z < y:
            continue
        lhs = (mul(s, mul(s, basis[x], basis[y]), basis[z]) + mul(s, mul(s, basis[x], basis[z]), basis[y])).coords
        for m in range(n):
            row: dict[int, Fraction] = {}

            def put(k, v):
                row[k] = row.get(k, Fraction(0)) + v

            if m == x:
                put(g(y, z), Fraction(2))
            if m == z:
                put(g(x, y), Fraction(-1))
            if m == y:
                put(g(x, z), Fraction(-1))
            put(rhs_col, -lhs[m])
            rows.append(row)
    sysm = RatMatrix.from_entries(len(rows), rhs_col + 1, ((r, k, v) for r, row in enumerate(rows) for k, v in row.items() if v))
    sol = [v for v in kernel_basis(sysm) if v[rhs_col] != 0]
    if not sol:
        raise Inconsistent("no form satisfies the identity")
    if len(sol) > 1:
        raise Inconsistent("the form is not determined by the identity")
    v = sol[0]
    vals = [x / v[rhs_col] for x in v[:rhs_col]]
    gram = tuple(tuple(vals[g(a, b)] for b in range(n)) for a in range(n))
    return MalcevForm(gram)


def jacobi_element(s: Algebra, x: Element, y: Element, z: Element) -> Element:
    return mul(s, mul(s, x, y), z) + mul(s, mul(s, y, z), x) + mul(s, mul(s, z, x), y)


def check_malcev_identity(s: Algebra) -> IdentityCheck:
    """``J(x,y,[x,z]) = [J(x,y,z), x]`` on all basis triples."""
    n = s.dim
    b = [s.basis(i) for i in range(n)]
    for x, y, z in itertools.product(range(n), repeat=3):
        lhs = jacobi_element(s, b[x], b[y], mul(s, b[x], b[z]))
        rhs = mul(s, jacobi_element(s, b[x], b[y], b[z]), b[x])
        if lhs != rhs:
            return IdentityCheck("malcev", False, (x, y, z), n**3)
    return IdentityCheck("malcev", True, None, n**3)


def jacobi_counterexample(s: Algebra) -> tuple[int, int, int] | None:
    """First basis triple with a nonzero Jacobian, or None for a Lie algebra."""
    n = s.dim
    b = [s.basis(i) for i in range(n)]
    for x, y, z in itertools.product(range(n), repeat=3):
        if not jacobi_element(s, b[x], b[y], b[z]).is_zero():
            return (x, y, z)
    return None


# weights of the T(C) building blocks inside xy = x.y + [x,y]/2
_HH_BRACKET_SCALE = Fraction(1, 4)


def t_of_c(c: Algebra, name: str = "toc") -> Algebra:
    """The 35-dimensional algebra on ``H (+) S`` built from octonions ``c``.

    ``S`` is the skew part of ``c`` and ``H`` its symmetric square, with basis
    ``h_ab = s_a s_b`` (``a <= b``).  Brackets, with ``(,)`` the Malcev form:

    * ``[s1, s2]`` is the commutator in ``c``;
    * ``[s, s1 s2] = [s,s1] s2 + s1 [s,s2]``;
    * ``[s1 s2, s3 s4] = k((s1,s3)[s2,s4] + (s1,s4)[s2,s3] + (s2,s3)[s1,s4] + (s2,s4)[s1,s3])`` with ``k = 1/4``.

    Symmetric products:

    * ``s1 . s2 = s1 s2`` in ``H``;
    * ``s . (s1 s2) = (s1,s2)s/2 + ((s,s1)s2 + (s,s2)s1)/4``;
    * ``(s1 s2) . (s3 s4) = ([s1,s3][s2,s4] + [s1,s4][s2,s3])/4 + ((s1,s2) s3 s4 + (s3,s4) s1 s2)/2``.

    The product is ``x . y + [x,y]/2``; the involution is ``+1`` on ``H`` and ``-1`` on ``S``.
    With ``k = 1`` the result fails the structurable identity, while ``k = 1/4`` passes it
    and keeps ``-(1/16) sum h_aa`` as the unit.
    """
    m = malcev_minus(c)
    G = malcev_form(m).gram
    ns = 7
    pairs = [(a, b) for a in range(ns) for b in range(a, ns)]
    hpos = {p: k for k, p in enumerate(pairs)}
    nh = len(pairs)
    N = nh + ns
    sidx = lambda a: nh + a  # noqa: E731
    hidx = lambda a, b: hpos[(min(a, b), max(a, b))]  # noqa: E731
    br = [[m.product(a, b) for b in range(ns)] for a in range(ns)]  # [s_a, s_b] in S coordinates

    def sym(u: dict[int, Fraction], v: dict[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for a, x in u.items():
            for b, y in v.items():
                k = hidx(a, b)
                out[k] = out.get(k, Fraction(0)) + x * y
        return out

    def unit_vec(a):
        return {a: Fraction(1)}

    entries: dict[tuple[int, int, int], Fraction] = {}

    def acc(i, j, vec: dict[int, Fraction], scale: Fraction, offset=0):
        for k, v in vec.items():
            if v:
                key = (i, j, k + offset)
                entries[key] = entries.get(key, Fraction(0)) + scale * v

    half, quarter = Fraction(1, 2), Fraction(1, 4)
    for a in range(ns):
        for b in range(ns):
            acc(sidx(a), sidx(b), br[a][b], half, nh)  # [s,s]/2
            acc(sidx(a), sidx(b), sym(unit_vec(a), unit_vec(b)), Fraction(1))  # s . s
    for a in range(ns):
        for (p, q), h in hpos.items():
            s1, s2 = unit_vec(p), unit_vec(q)
            lb = sym(br[a][p], s2)
            for k, v in sym(s1, br[a][q]).items():
                lb[k] = lb.get(k, Fraction(0)) + v
            acc(sidx(a), h, lb, half)  # [s, s1 s2]/2
            acc(h, sidx(a), lb, -half)
            dot = {a: half * G[p][q]}
            dot[q] = dot.get(q, Fraction(0)) + quarter * G[a][p]
            dot[p] = dot.get(p, Fraction(0)) + quarter * G[a][q]
            acc(sidx(a), h, dot, Fraction(1), nh)
            acc(h, sidx(a), dot, Fraction(1), nh)
    for (p, q), h1 in hpos.items():
        for (r, t), h2 in hpos.items():
            bb: dict[int, Fraction] = {}
            for g_, u in ((G[p][r], br[q][t]), (G[p][t], br[q][r]), (G[q][r], br[p][t]), (G[q][t], br[p][r])):
                if g_:
                    for k, v in u.items():
                        bb[k] = bb.get(k, Fraction(0)) + g_ * v
            acc(h1, h2, bb, half * _HH_BRACKET_SCALE, nh)
            acc(h1, h2, sym(br[p][r], br[q][t]), quarter)
            acc(h1, h2, sym(br[p][t], br[q][r]), quarter)
            acc(h1, h2, sym(unit_vec(r), unit_vec(t)), half * G[p][q])
            acc(h1, h2, sym(unit_vec(p), unit_vec(q)), half * G[r][t])
    inv = _diag([1] * nh + [-1] * ns)
    raw = Algebra(N, ("",) * N, _sc_from_dict(entries), None, inv, name)
    unit = find_unit(raw)
    if unit is None:
        raise NotOctonions("the constructed algebra has no unit")
    labels = tuple(f"{m.labels[a]}*{m.labels[b]}" for a, b in pairs) + m.labels
    return validate(Algebra(N, labels, _sc_from_dict(entries), unit, inv, name))
