from fractions import Fraction

import pytest

from pwlvopt import linalg as la


def F(x):
    return Fraction(x)


def test_dot_and_mismatch():
    assert la.dot(la.vec([1, 2]), la.vec([3, 4])) == 11
    with pytest.raises(ValueError):
        la.dot(la.vec([1]), la.vec([1, 2]))


def test_frac_rejects_float():
    with pytest.raises(TypeError):
        la.frac(0.5)


def test_rref_and_rank():
    m = la.mat([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    red, pivots = la.rref(m)
    assert pivots == (0, 1)
    assert la.rank(m) == 2


def test_nullspace_exact():
    m = la.mat([[1, 1, 0]])
    basis = la.nullspace(m)
    assert len(basis) == 2
    for v in basis:
        assert la.dot(m[0], v) == 0


def test_nullspace_empty_matrix():
    basis = la.nullspace((), ncols=3)
    assert basis == [la.unit_vec(3, i) for i in range(3)]


def test_solve_consistent_and_inconsistent():
    m = la.mat([[1, 1], [1, -1]])
    x = la.solve(m, la.vec([2, 0]))
    assert x == la.vec([1, 1])
    m2 = la.mat([[1, 1], [2, 2]])
    assert la.solve(m2, la.vec([1, 3])) is None


def test_solve_underdetermined_min_support():
    # free variable set to zero
    m = la.mat([[1, 1, 1]])
    x = la.solve(m, la.vec([5]))
    assert x == la.vec([5, 0, 0])


def test_in_span_and_independent_subset():
    vs = [la.vec([1, 0]), la.vec([2, 0]), la.vec([0, 1])]
    assert la.in_span([vs[0]], vs[1])
    assert not la.in_span([vs[0]], vs[2])
    assert la.independent_subset(vs) == [0, 2]


def test_coords_in_basis():
    basis = [la.vec([1, 1]), la.vec([1, -1])]
    t = la.coords_in_basis(basis, la.vec([3, 1]))
    assert t == la.vec([2, 1])
    assert la.coords_in_basis([], la.vec([0, 0])) == ()
    assert la.coords_in_basis([], la.vec([1, 0])) is None


def test_left_inverse():
    cols = [la.vec([1, 0, 1]), la.vec([0, 1, 1])]
    k = la.left_inverse(cols)
    prod = la.matmul(k, la.transpose(tuple(cols)))
    assert prod == la.identity(2)


def test_matmul_matvec():
    a = la.mat([[1, 2], [3, 4]])
    b = la.mat([[0, 1], [1, 0]])
    assert la.matmul(a, b) == la.mat([[2, 1], [4, 3]])
    assert la.matvec(a, la.vec([1, 1])) == la.vec([3, 7])
