"""Spaces of delta-derivations, centroids and generalized delta-derivation pairs.

Every space is the kernel of an integer linear system whose unknowns are the
entries of the map, ``phi[m][k]`` at column ``m * n + k``.  Small systems are
solved exactly over Q.  Large ones use a modular squeeze: the kernel dimension
modulo a prime bounds the rational kernel dimension from above, and candidate
vectors whose residual is exactly zero over Q bound it from below.  When the
two bounds meet, the candidates are a basis.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import Algebra, LinearMap, left_mul, right_mul
from .linalg import (
    DEFAULT_PRIMES,
    EchelonQ,
    RatMatrix,
    canonical_basis,
    echelon_mod,
    kernel_basis,
    reconstruct_vector,
    subspace_contains,
)
from .linalg.primes import primes_after

log = logging.getLogger(__name__)

EXACT_DIM_LIMIT = 16

Vector = list[Fraction]


class CertificationGap(RuntimeError):
    """Verified witnesses fall short of the modular kernel dimension."""


class NotHalfDerivation(ValueError):
    """The map does not satisfy the 1/2-derivation equations."""


class NormalFormViolation(AssertionError):
    """A 1/2-derivation differs from left or right multiplication by its value at the unit."""


@dataclass(frozen=True)
class DeltaParams:
    delta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "delta", Fraction(self.delta))

    def __str__(self) -> str:
        return f"{self.delta.numerator}/{self.delta.denominator}"


@dataclass
class Certificate:
    method: str
    exact_dim: int
    primes_used: list[int] = field(default_factory=list)
    lower_bound_witnesses: list[LinearMap] = field(default_factory=list)
    notes: str = ""

    def summary(self) -> dict:
        return {"method": self.method, "primes": list(self.primes_used)}


@dataclass
class LinearMapSpace:
    algebra_dim: int
    basis: list[LinearMap]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[Vector]:
        return [m.to_vector() for m in self.basis]

    def contains_identity(self) -> bool:
        return self.contains(LinearMap.identity(self.algebra_dim))

    def contains(self, phi: LinearMap) -> bool:
        return subspace_contains(self.vectors(), phi.to_vector()) if self.basis else phi.is_zero()

    def issubspace(self, other: "LinearMapSpace") -> bool:
        ov = other.vectors()
        if not ov:
            return not self.basis
        return all(subspace_contains(ov, v) for v in self.vectors())

    @classmethod
    def from_vectors(cls, n: int, vectors: Sequence[Sequence[Fraction]]) -> "LinearMapSpace":
        """Basis normalized to reduced echelon form, so equal spaces compare equal."""
        if not vectors:
            return cls(n, [])
        return cls(n, [LinearMap.from_vector(v, n) for v in canonical_basis(vectors, n * n)])


@dataclass
class PairSpace:
    algebra_dim: int
    pairs: list[tuple[LinearMap, LinearMap]]

    @property
    def dim(self) -> int:
        return len(self.pairs)

    def chi_projection(self) -> LinearMapSpace:
        vecs = [chi.to_vector() for chi, _ in self.pairs if not chi.is_zero()]
        return LinearMapSpace.from_vectors(self.algebra_dim, vecs)


# -- linear systems ----------------------------------------------------------------


def _nonzero_sc(a: Algebra) -> tuple[np.ndarray, ...]:
    C, _ = a.int_tensor
    idx = np.nonzero(C)
    vals = C[idx]
    return idx[0].astype(np.int64), idx[1].astype(np.int64), idx[2].astype(np.int64), vals


class _Terms:
    """Triplets of the three building blocks of every system, for an unknown map ``X``.

    Row ``(i*n + j)*n + m`` is coordinate ``m`` of:

    * ``prod``:  ``X(e_i e_j)``        = sum_k c_ijk X[m,k]
    * ``left``:  ``X(e_i) e_j``        = sum_l c_ljm X[l,i]
    * ``right``: ``e_i X(e_j)``        = sum_l c_ilm X[l,j]

    Values are the scaled integer structure constants.
    """

    def __init__(self, a: Algebra):
        n = a.dim
        self.n = n
        I, Jx, K, V = _nonzero_sc(a)
        ar = np.arange(n, dtype=np.int64)
        nnz = len(V)
        # prod: for each nonzero (i,j,k) and each m
        rep_m = np.tile(ar, nnz)
        self.prod = (
            (np.repeat(I * n + Jx, n) * n + rep_m),
            rep_m * n + np.repeat(K, n),
            np.repeat(V, n),
        )
        # left: nonzero (l,j,m) as c_ljm, each i
        rep_i = np.tile(ar, nnz)
        self.left = (
            (rep_i * n + np.repeat(Jx, n)) * n + np.repeat(K, n),
            np.repeat(I, n) * n + rep_i,
            np.repeat(V, n),
        )
        # right: nonzero (i,l,m) as c_ilm, each j
        rep_j = np.tile(ar, nnz)
        self.right = (
            (np.repeat(I, n) * n + rep_j) * n + np.repeat(K, n),
            np.repeat(Jx, n) * n + rep_j,
            np.repeat(V, n),
        )


def _assemble(nrows: int, ncols: int, parts) -> RatMatrix:
    """``parts`` is a list of (term, scale, row_offset, col_offset)."""
    rows, cols, vals = [], [], []
    for (r, c, v), scale, ro, co in parts:
        if scale == 0 or len(v) == 0:
            continue
        rows.append(r + ro)
        cols.append(c + co)
        vals.append(_scaled(v, scale))
    if not rows:
        return RatMatrix.zeros(nrows, ncols)
    vals_all = np.concatenate(vals) if all(x.dtype != object for x in vals) else np.concatenate([x.astype(object) for x in vals])
    return RatMatrix(nrows, ncols, np.concatenate(rows), np.concatenate(cols), vals_all)


def _scaled(v: np.ndarray, k: int) -> np.ndarray:
    if v.dtype != object and int(np.max(np.abs(v))) * abs(k) < 2**62:
        return v * k
    return v.astype(object) * k


def _delta_pq(d) -> tuple[int, int]:
    d = Fraction(d.delta if isinstance(d, DeltaParams) else d)
    return d.numerator, d.denominator


def delta_derivation_system(a: Algebra, d) -> RatMatrix:
    """``q phi(e_i e_j) - p (phi(e_i) e_j + e_i phi(e_j))`` for ``delta = p/q``; n^3 rows, n^2 columns."""
    p, q = _delta_pq(d)
    t = _Terms(a)
    n = a.dim
    return _assemble(n**3, n * n, [(t.prod, q, 0, 0), (t.left, -p, 0, 0), (t.right, -p, 0, 0)])


def centroid_system(a: Algebra) -> RatMatrix:
    """``chi(e_i e_j) - chi(e_i) e_j`` stacked over ``chi(e_i e_j) - e_i chi(e_j)``."""
    t = _Terms(a)
    n = a.dim
    n3 = n**3
    return _assemble(2 * n3, n * n, [(t.prod, 1, 0, 0), (t.left, -1, 0, 0), (t.prod, 1, n3, 0), (t.right, -1, n3, 0)])


def generalized_system(a: Algebra, d) -> RatMatrix:
    """Unknowns ``(chi, phi)``; rows ``q chi(xy) - p(chi(x)y + x phi(y))`` then ``q chi(xy) - p(phi(x)y + x chi(y))``."""
    p, q = _delta_pq(d)
    t = _Terms(a)
    n = a.dim
    n2, n3 = n * n, n**3
    return _assemble(
        2 * n3,
        2 * n2,
        [
            (t.prod, q, 0, 0),
            (t.left, -p, 0, 0),
            (t.right, -p, 0, n2),
            (t.prod, q, n3, 0),
            (t.left, -p, n3, n2),
            (t.right, -p, n3, 0),
        ],
    )


# -- kernels ---------------------------------------------------------------------------


def resolve_mode(a: Algebra, mode: str) -> str:
    if mode == "auto":
        return "exact" if a.dim <= EXACT_DIM_LIMIT else "certified"
    if mode not in ("exact", "certified"):
        raise ValueError(f"unknown mode {mode!r}")
    return mode


def _verified(system: RatMatrix, candidates: Sequence[Sequence[Fraction]]) -> list[Vector]:
    """Candidates with exactly zero residual, pruned to an independent set."""
    ech = EchelonQ(system.ncols)
    out = []
    for v in candidates:
        v = [Fraction(x) for x in v]
        if not any(v) or not system.annihilates(v):
            continue
        if ech.add({i: x for i, x in enumerate(v) if x}) is not None:
            out.append(v)
    return out


@dataclass
class _ModularKernel:
    p: int
    nullity: int
    pivots: tuple[int, ...]
    kernel: list[np.ndarray]


def _modular_kernel(system: RatMatrix, p: int) -> _ModularKernel:
    ech = echelon_mod(system, p)
    return _ModularKernel(p, ech.nullity, tuple(int(x) for x in ech.pivots), ech.kernel())


def _reconstruct(kernels: Sequence[_ModularKernel]) -> list[Vector] | None:
    """CRT plus rational reconstruction across primes that agree on the pivot set."""
    ref = kernels[0]
    usable = [k for k in kernels if k.pivots == ref.pivots]
    moduli = [k.p for k in usable]
    out = []
    for idx in range(ref.nullity):
        cols = [k.kernel[idx] for k in usable]
        v = reconstruct_vector(cols, moduli)
        if v is None:
            return None
        out.append(v)
    return out


def _sampled_candidates(system: RatMatrix, target: int, primes: Sequence[int], seed: int, exact: bool) -> list[Vector]:
    """Kernel of a random row subset, grown until its nullity reaches ``target``.

    The kernel of a subset contains the full kernel, so once the dimensions
    agree modulo a prime the subset kernel is the full kernel (for a prime
    that is lucky for both).  Small subsets are solved over Q directly;
    otherwise the subset kernel is lifted from several primes.
    """
    rng = random.Random(seed)
    n2 = system.ncols
    size = min(system.nrows, 3 * n2)
    order = list(range(system.nrows))
    rng.shuffle(order)
    while True:
        rows = sorted(order[:size])
        sub = system.take_rows(rows)
        if exact:
            kern = kernel_basis(sub)
            if len(kern) <= target or size == system.nrows:
                return kern
        else:
            first = _modular_kernel(sub, primes[0])
            if first.nullity <= target or size == system.nrows:
                kernels = [first] + [_modular_kernel(sub, p) for p in primes[1:]]
                extra = list(primes_after(max(primes), 4))
                while True:
                    vecs = _reconstruct(kernels)
                    if vecs is not None and len(_verified(sub, vecs)) == len(vecs):
                        return vecs
                    if not extra:
                        return vecs or []
                    kernels.append(_modular_kernel(sub, extra.pop(0)))
        size = min(system.nrows, 2 * size)


def certified_kernel(
    system: RatMatrix,
    known: Sequence[Sequence[Fraction]] = (),
    primes: Sequence[int] | None = None,
    seed: int = 0,
    allow_sampling: bool = True,
) -> tuple[list[Vector], Certificate]:
    """Kernel basis certified by the modular squeeze.

    ``known`` vectors are tried first; rows are sampled for further witnesses
    only when they fall short.  A prime whose kernel is larger than at the
    other primes is replaced, since for it the upper bound is not sharp.
    """
    primes = list(primes or DEFAULT_PRIMES[:2])
    if len(primes) < 2:
        raise ValueError("certification needs at least two primes")
    kernels = [_modular_kernel(system, p) for p in primes]
    spare = iter(primes_after(max(primes), 8))
    notes = []
    while len({k.nullity for k in kernels}) > 1:
        low = min(k.nullity for k in kernels)
        for k in list(kernels):
            if k.nullity > low:
                notes.append(f"prime {k.p} dropped (kernel dim {k.nullity} > {low})")
                log.debug(notes[-1])
                kernels.remove(k)
        while len(kernels) < len(primes):
            p = next(spare, None)
            if p is None:
                raise CertificationGap("modular kernel dimensions keep disagreeing across primes")
            kernels.append(_modular_kernel(system, p))
    upper = kernels[0].nullity
    wit = _verified(system, known)
    if len(wit) < upper and allow_sampling:
        log.debug("%d known witnesses for modular dimension %d; sampling rows", len(wit), upper)
        cands = _sampled_candidates(system, upper, [k.p for k in kernels], seed, exact=system.ncols <= EXACT_DIM_LIMIT**2)
        wit = _verified(system, list(wit) + list(cands))
    used = [k.p for k in kernels]
    if len(wit) != upper:
        raise CertificationGap(f"{len(wit)} verified witnesses against modular dimension {upper} at primes {used}")
    cert = Certificate("modular-squeeze", upper, used, [], "; ".join(notes))
    return wit, cert


def _solve(system: RatMatrix, mode: str, known=(), primes=None, seed: int = 0) -> tuple[list[Vector], Certificate]:
    if mode == "exact":
        kern = kernel_basis(system)
        return kern, Certificate("exact", len(kern))
    return certified_kernel(system, known, primes, seed)


def _space(n: int, vectors: Sequence[Vector], cert: Certificate) -> tuple[LinearMapSpace, Certificate]:
    space = LinearMapSpace.from_vectors(n, vectors)
    if cert.method == "modular-squeeze":
        cert.lower_bound_witnesses = list(space.basis)
    return space, cert


def centroid(a: Algebra, mode: str = "exact", primes=None, seed: int = 0) -> LinearMapSpace:
    return centroid_with_certificate(a, mode, primes, seed)[0]


def centroid_with_certificate(a: Algebra, mode: str = "exact", primes=None, seed: int = 0):
    mode = resolve_mode(a, mode)
    ident = LinearMap.identity(a.dim).to_vector()
    vecs, cert = _solve(centroid_system(a), mode, [ident], primes, seed)
    return _space(a.dim, vecs, cert)


def delta_derivation_space(
    a: Algebra, d, mode: str = "exact", primes=None, seed: int = 0, centroid_space: LinearMapSpace | None = None
) -> tuple[LinearMapSpace, Certificate]:
    """Kernel of :func:`delta_derivation_system`, exact or certified.

    Known members in certified mode: the identity and the centroid for
    ``delta = 1/2``; none otherwise, which leaves sampling to supply witnesses
    whenever the modular kernel is nonzero.
    """
    d = d if isinstance(d, DeltaParams) else DeltaParams(d)
    mode = resolve_mode(a, mode)
    system = delta_derivation_system(a, d)
    known: list[Vector] = []
    if mode == "certified" and d.delta == Fraction(1, 2):
        cen = centroid_space if centroid_space is not None else centroid(a, mode, primes, seed)
        known = [LinearMap.identity(a.dim).to_vector()] + cen.vectors()
    vecs, cert = _solve(system, mode, known, primes, seed)
    return _space(a.dim, vecs, cert)


def derivations(a: Algebra, mode: str = "exact", primes=None, seed: int = 0) -> LinearMapSpace:
    return delta_derivation_space(a, 1, mode, primes, seed)[0]


def derivations_by_sampling(a: Algebra, seed: int = 0, primes=None) -> LinearMapSpace:
    """Derivations from a random row subset, each candidate verified against every equation.

    Independent of the full exact elimination; the squeeze against the
    modular dimension of the whole system guarantees nothing is missed.
    """
    system = delta_derivation_system(a, 1)
    vecs, cert = certified_kernel(system, (), primes, seed)
    return _space(a.dim, vecs, cert)[0]


def generalized_space(a: Algebra, d, mode: str = "exact", primes=None, seed: int = 0, centroid_space=None) -> PairSpace:
    """Pairs ``(chi, phi)`` with ``chi(xy) = d(chi(x)y + x phi(y)) = d(phi(x)y + x chi(y))``."""
    d = d if isinstance(d, DeltaParams) else DeltaParams(d)
    mode = resolve_mode(a, mode)
    n = a.dim
    n2 = n * n
    system = generalized_system(a, d)
    known: list[Vector] = []
    if mode == "certified" and d.delta == Fraction(1, 2):
        cen = centroid_space if centroid_space is not None else centroid(a, mode, primes, seed)
        known = [v + v for v in cen.vectors()]
    vecs, _ = _solve(system, mode, known, primes, seed)
    vecs = canonical_basis(vecs, 2 * n2) if vecs else []
    return PairSpace(n, [(LinearMap.from_vector(v[:n2], n), LinearMap.from_vector(v[n2:], n)) for v in vecs])


def is_nontrivial_delta_derivation_present(a: Algebra, d, mode: str = "exact", primes=None, seed: int = 0) -> bool:
    d = d if isinstance(d, DeltaParams) else DeltaParams(d)
    if d.delta in (0, 1):
        return False
    cen = centroid(a, mode, primes, seed)
    space, _ = delta_derivation_space(a, d, mode, primes, seed, centroid_space=cen)
    return not space.issubspace(cen)


def half_derivation_normal_form(a: Algebra, phi: LinearMap):
    """Return ``phi(1)`` after checking ``phi = L_{phi(1)} = R_{phi(1)}``."""
    if not delta_derivation_system(a, Fraction(1, 2)).annihilates(phi.to_vector()):
        raise NotHalfDerivation("map violates the 1/2-derivation equations")
    elem = phi(a.one())
    if left_mul(a, elem) != phi:
        raise NormalFormViolation("phi differs from left multiplication by phi(1)")
    if right_mul(a, elem) != phi:
        raise NormalFormViolation("phi differs from right multiplication by phi(1)")
    return elem


def block_diagonal(phi: LinearMap, blocks: Sequence[int]) -> bool:
    """True iff ``phi`` maps each coordinate block into itself."""
    owner = [b for b, size in enumerate(blocks) for _ in range(size)]
    m = phi.matrix
    return all(owner[int(r)] == owner[int(c)] for r, c in zip(m.rows, m.cols))
