from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from structura.linalg import (
    DEFAULT_PRIMES,
    BadPrime,
    DimensionMismatch,
    EchelonModP,
    ModMatrix,
    RatMatrix,
    canonical_basis,
    certification_primes,
    crt,
    echelon_mod,
    independent_subset,
    is_prime,
    kernel_basis,
    kernel_basis_mod,
    matmul_mod,
    rank,
    rank_mod,
    rational_reconstruct,
    reconstruct_vector,
    subspace_contains,
    subspace_equal,
)
from structura.linalg.tensor import exact_einsum, exact_scale

F = Fraction
P = DEFAULT_PRIMES[0]


# -- RatMatrix -----------------------------------------------------------------


def test_storage_is_canonical():
    m = RatMatrix(2, 2, [1, 0, 0, 1], [1, 0, 0, 1], [3, 2, -2, 0], den=6)
    assert m.entries() == [(1, 1, F(1, 2))]
    assert m == RatMatrix.from_dense([[0, 0], [0, F(1, 2)]])


def test_from_dense_and_back():
    rows = [[F(1, 2), 0, F(-3, 4)], [0, 0, 0], [5, F(2, 3), 1]]
    m = RatMatrix.from_dense(rows)
    assert m.to_dense() == rows
    assert m.nnz == 5
    assert m.den == 12


def test_big_numerators_fall_back_to_python_ints():
    big = 2**70 + 1
    m = RatMatrix.from_dense([[big, 1], [0, 1]])
    assert m.nums.dtype == object
    assert m.matvec([1, -big]) == [0, -big]


def test_matvec_exact():
    m = RatMatrix.from_dense([[F(1, 3), 2], [0, F(-1, 7)]])
    assert m.matvec([F(3, 2), 1]) == [F(5, 2), F(-1, 7)]
    assert m.annihilates([0, 0])
    with pytest.raises(DimensionMismatch):
        m.matvec([1])


def test_take_rows_renumbers():
    m = RatMatrix.from_dense([[1, 0], [0, 2], [3, 4]])
    assert m.take_rows([2, 0]).to_dense() == [[3, 4], [1, 0]]


def test_index_out_of_range():
    with pytest.raises(IndexError):
        RatMatrix.from_entries(1, 1, [(0, 3, 1)])


# -- rational kernels ----------------------------------------------------------------


def test_kernel_examples():
    assert kernel_basis(RatMatrix.from_dense([[1, 2], [2, 4]])) == [[F(-2), F(1)]]
    assert kernel_basis(RatMatrix.identity(3)) == []
    assert len(kernel_basis(RatMatrix.zeros(2, 3))) == 3


def test_rank_examples():
    assert rank(RatMatrix.from_dense([[1, 2], [2, 4]])) == 1
    assert rank(RatMatrix.identity(5)) == 5
    assert rank(RatMatrix.from_dense([[1, 0], [0, 1], [1, 1]])) == 2


def test_kernel_basis_is_reduced_on_free_columns():
    m = RatMatrix.from_dense([[1, 1, 1, 1], [0, 1, 2, 3]])
    kern = kernel_basis(m)
    free = [2, 3]
    for v, f in zip(kern, free):
        assert [v[g] for g in free] == [1 if g == f else 0 for g in free]
        assert m.annihilates(v)


def test_subspace_examples():
    assert subspace_contains([[1, 0]], [3, 0])
    assert not subspace_contains([[1, 0]], [0, 1])
    assert subspace_contains([], [0, 0])
    assert subspace_equal([[1, 0], [0, 1]], [[1, 1], [1, -1]])
    assert not subspace_equal([[1, 0]], [[0, 1]])
    assert subspace_equal([], [])
    with pytest.raises(DimensionMismatch):
        subspace_equal([[1, 0]], [[1, 0, 0]])


def test_independent_subset_and_canonical_basis():
    vecs = [[1, 1, 0], [2, 2, 0], [0, 0, 1], [1, 1, 1]]
    assert independent_subset(vecs, 3) == [0, 2]
    assert canonical_basis(vecs, 3) == [[1, 1, 0], [0, 0, 1]]


@st.composite
def small_matrices(draw):
    r = draw(st.integers(1, 7))
    c = draw(st.integers(1, 7))
    vals = st.fractions(min_value=-5, max_value=5, max_denominator=4) | st.just(Fraction(0))
    return [[draw(vals) for _ in range(c)] for _ in range(r)]


@settings(max_examples=60, deadline=None, derandomize=True)
@given(small_matrices())
def test_rank_nullity_and_residual(rows):
    m = RatMatrix.from_dense(rows)
    kern = kernel_basis(m)
    assert rank(m) + len(kern) == m.ncols
    assert all(m.annihilates(v) for v in kern)
    assert kernel_basis(m) == kern  # deterministic


@settings(max_examples=40, deadline=None, derandomize=True)
@given(small_matrices())
def test_modular_kernel_bounds_rational_kernel(rows):
    m = RatMatrix.from_dense(rows)
    q = kernel_basis(m)
    for p in (7, 11, P):
        if m.den % p == 0:
            continue
        kp = kernel_basis_mod(m, p)
        assert len(kp) >= len(q)
        dense = np.array([[int(x) for x in row] for row in ModMatrix.from_rat(m, p).to_dense()], dtype=np.int64)
        for v in kp:
            assert not np.any((dense @ np.array(v)) % p)


# -- modular -----------------------------------------------------------------


def test_kernel_mod_examples():
    assert len(kernel_basis_mod(RatMatrix.from_dense([[1, 2], [2, 4]]), 7)) == 1
    assert kernel_basis_mod(RatMatrix.identity(4), P) == []
    m = RatMatrix.from_dense([[P, 0], [0, 1]])
    assert len(kernel_basis_mod(m, P)) == 1
    assert kernel_basis(m) == []


def test_bad_primes():
    m = RatMatrix.from_dense([[F(1, 7), 1]])
    for p in (2, 3, 5, 9):
        with pytest.raises(BadPrime):
            kernel_basis_mod(m, p)
    with pytest.raises(BadPrime):
        kernel_basis_mod(m, 7)
    with pytest.raises(BadPrime):
        ModMatrix(4, 1, 1, [0], [0], [1])
    with pytest.raises(BadPrime):
        EchelonModP(3, 2**31 + 11)


def test_modmatrix_drops_zero_residues():
    mm = ModMatrix(7, 2, 2, [0, 1], [0, 1], [14, -1])
    assert mm.residues.tolist() == [6]


def test_default_primes():
    assert len(DEFAULT_PRIMES) == 5
    assert all(is_prime(p) and p > 2**30 for p in DEFAULT_PRIMES)
    assert DEFAULT_PRIMES[0] == 1073741827
    more = certification_primes(7)
    assert more[:5] == list(DEFAULT_PRIMES) and all(is_prime(p) for p in more) and more == sorted(set(more))


def test_matmul_mod_matches_python_integers():
    rng = np.random.default_rng(0)
    p = DEFAULT_PRIMES[-1]
    a = rng.integers(0, p, size=(13, 40))
    b = rng.integers(0, p, size=(40, 9))
    ref = [[sum(int(a[i, k]) * int(b[k, j]) for k in range(40)) % p for j in range(9)] for i in range(13)]
    assert matmul_mod(a, b, p).tolist() == ref


def test_echelon_mod_matches_rational_rank_on_random_integers():
    rng = random.Random(3)
    for _ in range(5):
        rows = [[rng.randint(-3, 3) for _ in range(12)] for _ in range(30)]
        for r in rows[15:]:
            r[0:3] = [0, 0, 0]
        m = RatMatrix.from_dense(rows)
        ech = echelon_mod(m, P)
        assert ech.rank == rank(m) == rank_mod(m, P)
        assert len(ech.kernel()) == ech.nullity


def test_echelon_add_dense_agrees_with_sparse():
    rng = np.random.default_rng(5)
    rows = rng.integers(-4, 5, size=(20, 10))
    rows[:, 7] = rows[:, 0] + rows[:, 1]
    a = EchelonModP(10, P)
    a.add_dense(rows[:8])
    a.add_dense(rows[8:])
    b = echelon_mod(RatMatrix.from_dense(rows.tolist()), P)
    assert a.rank == b.rank == 9
    assert np.array_equal(a.table, b.table)


# -- reconstruction ---------------------------------------------------------------


def test_crt_and_rational_reconstruction():
    a, m = crt([2, 3], [5, 7])
    assert (a, m) == (17, 35)
    mod = DEFAULT_PRIMES[0] * DEFAULT_PRIMES[1]
    for x in (F(-3, 16), F(22, 7), F(0), F(-1)):
        r = x.numerator * pow(x.denominator, -1, mod) % mod
        assert rational_reconstruct(r, mod) == x
    # 23 mod 1009 has no lift with numerator and denominator below sqrt(1009 / 2)
    assert rational_reconstruct(23, 1009) is None


def test_reconstruct_vector():
    v = [F(1, 2), F(-5, 3), F(0)]
    cols = [[x.numerator * pow(x.denominator, -1, p) % p for x in v] for p in DEFAULT_PRIMES[:2]]
    assert reconstruct_vector(cols, DEFAULT_PRIMES[:2]) == v


# -- tensor contractions ------------------------------------------------------------


@pytest.mark.parametrize("scale", [1, 2**20, 2**40])
def test_exact_einsum_routes_agree(scale):
    rng = np.random.default_rng(1)
    a = rng.integers(-9, 10, size=(4, 5)) * scale
    b = rng.integers(-9, 10, size=(5, 3)) * scale
    got = exact_einsum("ij,jk->ik", a, b)
    ref = np.einsum("ij,jk->ik", a.astype(object), b.astype(object))
    assert [[int(x) for x in r] for r in got] == [[int(x) for x in r] for r in ref]


def test_exact_scale_promotes():
    a = np.array([2**61], dtype=np.int64)
    assert int(exact_scale(a, 8)[0]) == 2**64
