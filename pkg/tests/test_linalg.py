from fractions import Fraction

import numpy as np
import pytest

from conftest import F2, F3, F5, brute_image_set, brute_kernel_set, subspace_set

from diagramchase.errors import DimensionMismatch, InputError, NotInduced
from diagramchase.fields import QQ
from diagramchase.genrand import Xorshift64Star, random_matrix
from diagramchase.linalg import (
    LinearMap,
    Subspace,
    image,
    induced_map,
    kernel,
    matrix_inverse,
    quotient,
    quotient_map,
    rank,
    rref,
    solve,
)


# ---------------------------------------------------------------- rref

def test_rref_zero_matrix():
    reduced, rk, pivots = rref(LinearMap.zero(F2, 2, 2))
    assert reduced.is_zero() and rk == 0 and pivots == []


def test_rref_identity():
    reduced, rk, pivots = rref(LinearMap.identity(F5, 3))
    assert reduced == LinearMap.identity(F5, 3)
    assert rk == 3 and pivots == [0, 1, 2]


def test_rref_hand_reduction_mod2():
    reduced, rk, pivots = rref(LinearMap.from_rows(F2, [[1, 1], [1, 1]]))
    assert reduced.data.tolist() == [[1, 1], [0, 0]]
    assert rk == 1 and pivots == [0]


def test_rref_idempotent_and_unique():
    rng = Xorshift64Star(11)
    for _ in range(30):
        m = random_matrix(F5, 4, 5, rng)
        reduced, _, _ = rref(m)
        again, _, _ = rref(reduced)
        assert again == reduced


# ---------------------------------------------------------------- kernel / image

def test_kernel_identity_is_zero():
    assert kernel(LinearMap.identity(F3, 2)).dim == 0


def test_kernel_zero_map_is_everything():
    k = kernel(LinearMap.zero(F2, 1, 2))
    assert k.dim == 2


def test_kernel_matches_enumeration():
    m = LinearMap.from_rows(F2, [[1, 0], [1, 0]])
    assert subspace_set(kernel(m)) == brute_kernel_set(m)
    assert kernel(m).basis.tolist() == [[0, 1]]


def test_image_examples():
    assert image(LinearMap.zero(F2, 2, 2)).dim == 0
    assert image(LinearMap.identity(F2, 2)) == Subspace.full(F2, 2)
    m = LinearMap.from_rows(F2, [[1], [1]])
    assert subspace_set(image(m)) == brute_image_set(m)
    assert image(m).basis.tolist() == [[1, 1]]


def test_rank_nullity_sweep():
    rng = Xorshift64Star(5)
    for _ in range(40):
        m = random_matrix(F5, rng.randint(0, 4), rng.randint(0, 4), rng)
        assert kernel(m).dim + image(m).dim == m.cols


# ---------------------------------------------------------------- subspaces

def test_canonicity_across_generating_sets():
    gens_a = F5.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    gens_b = F5.array([[1, 3, 4], [0, 2, 2], [3, 6, 9]])
    a = Subspace.from_generators(F5, 3, gens_a)
    b = Subspace.from_generators(F5, 3, gens_b)
    assert subspace_set(a) == subspace_set(b)
    assert a == b
    assert np.array_equal(a.basis, b.basis)


def test_lattice_examples():
    e0 = Subspace.from_generators(F2, 2, F2.array([[1, 0]]))
    e1 = Subspace.from_generators(F2, 2, F2.array([[0, 1]]))
    diag = Subspace.from_generators(F2, 2, F2.array([[1, 1]]))
    full = Subspace.full(F2, 2)
    assert (e0 & e0) == e0
    assert (e0 & e1).dim == 0
    assert (e0 + diag) == full
    assert e0 <= full and not (full <= e0)
    assert F2.vector([1, 1]) in diag and F2.vector([1, 0]) not in diag


def test_modular_dimension_law():
    rng = Xorshift64Star(7)
    for _ in range(30):
        a = image(random_matrix(F5, 4, rng.randint(0, 3), rng))
        b = image(random_matrix(F5, 4, rng.randint(0, 3), rng))
        assert a.dim + b.dim == (a & b).dim + (a + b).dim


def test_lattice_ops_match_enumeration_over_f2():
    rng = Xorshift64Star(9)
    for _ in range(25):
        a = image(random_matrix(F2, 3, rng.randint(0, 3), rng))
        b = image(random_matrix(F2, 3, rng.randint(0, 3), rng))
        sa, sb = subspace_set(a), subspace_set(b)
        assert subspace_set(a & b) == sa & sb
        assert subspace_set(a + b) == {
            tuple(int(x) for x in F2.reduce(np.array(u) + np.array(v)))
            for u in sa for v in sb}
        assert (a <= b) == (sa <= sb)


def test_ambient_mismatch_raises():
    a = Subspace.zero(F2, 2)
    b = Subspace.zero(F2, 3)
    with pytest.raises(DimensionMismatch):
        a & b
    with pytest.raises(DimensionMismatch):
        a + b


# ---------------------------------------------------------------- quotients

def test_quotient_by_zero_is_identity():
    q = quotient(2, Subspace.zero(F2, 2))
    assert q.dim == 2
    assert q.projection == LinearMap.identity(F2, 2)


def test_quotient_by_full_space():
    q = quotient(2, Subspace.full(F2, 2))
    assert q.dim == 0


def test_quotient_kills_exactly_the_subspace():
    w = Subspace.from_generators(F2, 2, F2.array([[1, 1]]))
    q = quotient(2, w)
    assert q.dim == 1
    assert not any(q.project(F2.vector([1, 1])))
    assert rank(q.projection) == 1
    assert (q.projection @ q.section) == LinearMap.identity(F2, 1)
    assert kernel(q.projection) == w


def test_quotient_section_projection_identity_sweep():
    rng = Xorshift64Star(13)
    for _ in range(20):
        w = image(random_matrix(F5, 4, rng.randint(0, 4), rng))
        q = quotient(4, w)
        assert (q.projection @ q.section) == LinearMap.identity(F5, q.dim)
        assert kernel(q.projection) == w
        assert q.dim == 4 - w.dim


def test_quotient_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        quotient(3, Subspace.zero(F2, 2))


# ---------------------------------------------------------------- induced maps

def test_induced_identity_restricts_to_identity():
    u = Subspace.from_generators(F5, 3, F5.array([[1, 0, 2], [0, 1, 1]]))
    ind = induced_map(LinearMap.identity(F5, 3), u, u)
    assert ind == LinearMap.identity(F5, 2)


def test_induced_from_zero_subspace_is_empty():
    ind = induced_map(LinearMap.from_rows(F2, [[1, 0], [0, 1]]),
                      Subspace.zero(F2, 2), Subspace.full(F2, 2))
    assert ind.rows == 2 and ind.cols == 0


def test_induced_evaluates_on_basis():
    f = LinearMap.from_rows(F2, [[1, 1], [0, 0]])
    u = Subspace.from_generators(F2, 2, F2.array([[1, 1]]))
    w = kernel(LinearMap.from_rows(F2, [[0, 1]]))
    assert w.basis.tolist() == [[1, 0]]
    ind = induced_map(f, u, w)
    assert ind.rows == 1 and ind.cols == 1 and ind.is_zero()


def test_induced_rejects_escaping_image():
    f = LinearMap.identity(F2, 2)
    u = Subspace.full(F2, 2)
    w = Subspace.from_generators(F2, 2, F2.array([[1, 0]]))
    with pytest.raises(NotInduced) as err:
        induced_map(f, u, w)
    assert err.value.index in (0, 1)


def test_induced_commutes_with_inclusions():
    rng = Xorshift64Star(21)
    for _ in range(20):
        f = random_matrix(F5, 3, 3, rng)
        u = kernel(random_matrix(F5, rng.randint(0, 2), 3, rng))
        w = image(random_matrix(F5, 3, 3, rng)) + image(f @ u.inclusion())
        ind = induced_map(f, u, w)
        assert (f @ u.inclusion()) == (w.inclusion() @ ind)


# ---------------------------------------------------------------- solve / inverse

def test_solve_and_inverse():
    a = LinearMap.from_rows(F5, [[1, 2], [3, 4]])
    x = solve(a, F5.vector([1, 1]))
    assert np.array_equal(a.apply(x), F5.vector([1, 1]))
    assert (a @ matrix_inverse(a)) == LinearMap.identity(F5, 2)


def test_solve_reports_inconsistency():
    a = LinearMap.from_rows(F2, [[1, 0], [1, 0]])
    assert solve(a, F2.vector([1, 0])) is None


def test_singular_inverse_raises():
    with pytest.raises(InputError):
        matrix_inverse(LinearMap.from_rows(F2, [[1, 1], [1, 1]]))


def test_quotient_map_well_defined():
    f = LinearMap.from_rows(F2, [[1, 0], [0, 0]])
    src = quotient(2, image(LinearMap.from_rows(F2, [[0], [1]])))
    tgt = quotient(2, image(LinearMap.from_rows(F2, [[0], [1]])))
    qm = quotient_map(f, src, tgt)
    for v in F2.iter_vectors(2):
        assert np.array_equal(qm.apply(src.project(v)), tgt.project(f.apply(v)))


# ---------------------------------------------------------------- rationals

def test_rational_rref_and_kernel():
    m = LinearMap.from_rows(QQ, [[Fraction(1, 2), Fraction(1, 3)],
                                 [Fraction(1, 4), Fraction(1, 6)]])
    _, rk, _ = rref(m)
    assert rk == 1
    k = kernel(m)
    assert k.dim == 1
    assert not any(m.apply(k.basis[0]))


def test_rational_quotient_exact():
    w = Subspace.from_generators(QQ, 3, QQ.array([[1, "1/2", "1/3"]]))
    q = quotient(3, w)
    assert q.dim == 2
    assert not any(q.project(QQ.vector([2, 1, "2/3"])))


def test_empty_matrices_are_first_class():
    z = LinearMap.zero(F2, 0, 3)
    assert kernel(z).dim == 3
    assert image(z).dim == 0
    z2 = LinearMap.zero(F2, 3, 0)
    assert kernel(z2).dim == 0
    assert image(z2).dim == 0
    composite = z @ z2
    assert composite.rows == 0 and composite.cols == 0
