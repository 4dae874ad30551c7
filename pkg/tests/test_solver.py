from __future__ import annotations

from fractions import Fraction

import pytest

from structura.algebra import LinearMap, direct_sum, left_mul, mul, right_mul
from structura.catalog import build
from structura.constructions import ground_field, octonion_table, quaternions
from structura.linalg import DEFAULT_PRIMES, RatMatrix, kernel_basis
from structura.solver import (
    CertificationGap,
    DeltaParams,
    LinearMapSpace,
    NotHalfDerivation,
    block_diagonal,
    centroid,
    centroid_system,
    certified_kernel,
    delta_derivation_space,
    delta_derivation_system,
    derivations,
    derivations_by_sampling,
    generalized_space,
    generalized_system,
    half_derivation_normal_form,
    is_nontrivial_delta_derivation_present,
    resolve_mode,
)

from conftest import centroid_of, delta_space

HALF = Fraction(1, 2)


# -- systems ------------------------------------------------------------------------------------


def test_system_shapes():
    o = octonion_table()
    s = delta_derivation_system(o, HALF)
    assert (s.nrows, s.ncols) == (512, 64)
    assert s.annihilates(LinearMap.identity(8).to_vector())
    assert (centroid_system(o).nrows, centroid_system(o).ncols) == (1024, 64)
    assert (generalized_system(o, HALF).nrows, generalized_system(o, HALF).ncols) == (1024, 128)


def test_one_dimensional_systems():
    f = ground_field()
    half = delta_derivation_system(f, HALF)
    assert (half.nrows, half.ncols) == (1, 1) and half.nnz == 0
    assert kernel_basis(delta_derivation_system(f, 1)) == []


def test_system_rows_follow_definition():
    # row (i*n + j)*n + m evaluated on phi is the m-th coordinate of phi(e_i e_j) - d(phi(e_i)e_j + e_i phi(e_j)),
    # scaled by the denominator of d so that the rows stay integral
    q = quaternions()
    n = q.dim
    phi = LinearMap.from_dense([[1, 2, 0, -1], [0, 3, 1, 0], [2, 0, 0, 1], [1, 1, -1, 0]])
    d = Fraction(1, 3)
    residual = delta_derivation_system(q, d).matvec(phi.to_vector())
    for i in range(n):
        for j in range(n):
            ei, ej = q.basis(i), q.basis(j)
            ref = phi(mul(q, ei, ej)) - d * (mul(q, phi(ei), ej) + mul(q, ei, phi(ej)))
            assert residual[(i * n + j) * n : (i * n + j + 1) * n] == [d.denominator * x for x in ref.coords]


def test_delta_params():
    assert DeltaParams("1/2").delta == HALF
    assert str(DeltaParams(2)) == "2/1"


def test_resolve_mode():
    assert resolve_mode(quaternions(), "auto") == "exact"
    assert resolve_mode(build("toc"), "auto") == "certified"
    with pytest.raises(ValueError):
        resolve_mode(quaternions(), "fast")


# -- spaces ------------------------------------------------------------------------------------


def test_octonion_half_space_is_scalars():
    space, cert = delta_space("octonion-table", HALF)
    assert space.dim == 1 and space.contains_identity()
    assert cert.method == "exact"


def test_unital_delta_two_vanishes():
    for name in ("octonion-table", "matrix-inv-2", "triple-1d"):
        assert delta_space(name, Fraction(2))[0].dim == 0


def test_matrix_derivations_are_inner():
    m = build("matrix-inv-2")
    der = delta_space("matrix-inv-2", Fraction(1))[0]
    assert der.dim == 3
    for a in ([[1, 0], [0, -1]], [[0, 1], [0, 0]], [[0, 0], [1, 0]]):
        x = m.element([v for row in a for v in row])
        assert der.contains(left_mul(m, x) - right_mul(m, x))


def test_centroid_examples():
    assert centroid_of("octonion-table")[0].dim == 1
    s = direct_sum(octonion_table(), build("matrix-inv-2"))
    cen = centroid(s)
    assert cen.dim == 2 and cen.contains_identity()


def test_derivation_dims():
    assert derivations(octonion_table()).dim == 14
    assert LinearMap.zero(8).is_zero() and derivations(octonion_table()).contains(LinearMap.zero(8))


def test_generalized_space_contains_scalar_pairs():
    o = octonion_table()
    pairs = generalized_space(o, HALF)
    system = generalized_system(o, HALF)
    ident = LinearMap.identity(8).to_vector()
    assert system.annihilates(ident + ident)
    three = [3 * x for x in ident]
    assert system.annihilates(three + three)
    assert pairs.dim >= 1
    for chi, phi in pairs.pairs:
        assert system.annihilates(chi.to_vector() + phi.to_vector())


def test_nontriviality_verdicts():
    assert not is_nontrivial_delta_derivation_present(octonion_table(), HALF)
    assert not is_nontrivial_delta_derivation_present(octonion_table(), 1)
    assert not is_nontrivial_delta_derivation_present(octonion_table(), 0)


def test_linear_map_space_is_canonical():
    a = LinearMapSpace.from_vectors(2, [[1, 1, 0, 0], [1, -1, 0, 0]])
    b = LinearMapSpace.from_vectors(2, [[1, 0, 0, 0], [0, 1, 0, 0]])
    assert [m.to_vector() for m in a.basis] == [m.to_vector() for m in b.basis]
    assert a.issubspace(b) and b.issubspace(a)
    assert LinearMapSpace.from_vectors(2, []).issubspace(a)
    assert not a.issubspace(LinearMapSpace.from_vectors(2, []))


# -- normal form ---------------------------------------------------------------------------------


def test_half_derivation_normal_form():
    o = octonion_table()
    assert half_derivation_normal_form(o, LinearMap.identity(8)) == o.one()
    three = LinearMap.identity(8) + LinearMap.identity(8) + LinearMap.identity(8)
    assert half_derivation_normal_form(o, three) == 3 * o.one()
    for phi in delta_space("octonion-table", HALF)[0].basis:
        half_derivation_normal_form(o, phi)
    with pytest.raises(NotHalfDerivation):
        half_derivation_normal_form(o, left_mul(o, o.basis(1)))


def test_normal_form_rejects_non_half_derivations():
    # on F (+) F the coordinate swap sends the unit to itself but moves e1 e1 = e1 off its block
    s = direct_sum(ground_field(), ground_field())
    swap = LinearMap.from_dense([[0, 1], [1, 0]])
    assert not delta_derivation_system(s, HALF).annihilates(swap.to_vector())
    with pytest.raises(NotHalfDerivation):
        half_derivation_normal_form(s, swap)
    proj = LinearMap.from_dense([[1, 0], [0, 0]])
    assert half_derivation_normal_form(s, proj) == s.basis(0)


# -- block structure --------------------------------------------------------------------------------


def test_block_diagonal():
    assert block_diagonal(LinearMap.identity(4), [2, 2])
    off = LinearMap.from_dense([[0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    assert not block_diagonal(off, [2, 2])
    assert block_diagonal(off, [4])


# -- certification ------------------------------------------------------------------------------


def test_certified_matches_exact_on_quaternions():
    q = quaternions()
    for d in (HALF, Fraction(1)):
        ex, _ = delta_derivation_space(q, d, "exact")
        ce, cert = delta_derivation_space(q, d, "certified")
        assert ex.dim == ce.dim == cert.exact_dim
        assert ex.issubspace(ce) and ce.issubspace(ex)
        assert cert.method == "modular-squeeze" and len(cert.primes_used) >= 2
        assert len(cert.lower_bound_witnesses) == ex.dim


def test_certified_kernel_drops_unlucky_prime():
    p = DEFAULT_PRIMES[0]
    m = RatMatrix.from_dense([[p, 0, 0], [0, 1, -1]])
    kern, cert = certified_kernel(m)
    assert len(kern) == 1 and cert.exact_dim == 1
    assert p not in cert.primes_used and len(cert.primes_used) == 2
    assert str(p) in cert.notes


def test_certified_kernel_raises_gap_without_witnesses():
    m = RatMatrix.from_dense([[1, -1, 0]])
    with pytest.raises(CertificationGap):
        certified_kernel(m, known=[], allow_sampling=False)
    kern, _ = certified_kernel(m, known=[[1, 1, 0], [0, 0, 1]], allow_sampling=False)
    assert len(kern) == 2


def test_certified_kernel_needs_two_primes():
    with pytest.raises(ValueError):
        certified_kernel(RatMatrix.identity(2), primes=[DEFAULT_PRIMES[0]])


def test_sampling_path_reproduces_exact_derivations():
    q = quaternions()
    sampled = derivations_by_sampling(q, seed=7)
    exact = derivations(q)
    assert sampled.dim == exact.dim == 3
    assert sampled.issubspace(exact) and exact.issubspace(sampled)
