import itertools
import random
from fractions import Fraction

import pytest

from pwlvopt import polyhedra as ph
from pwlvopt import pwl
from pwlvopt.linalg import matvec, vec
from pwlvopt.polyhedra import GenPolyhedron, Subspace, row, whole_space
from pwlvopt.pwl import AffineMap, PwlFunction

F = Fraction


def abs_value() -> PwlFunction:
    left = GenPolyhedron(1, (row([1], 0),))
    right = GenPolyhedron(1, (row([-1], 0),))
    return PwlFunction(1, 1, (
        (left, AffineMap([[-1]], [0])),
        (right, AffineMap([[1]], [0])),
    ))


def hinge_function(p, q, hyperplanes, t0, b0, gains):
    """Continuous PWL built from hinge terms; returns PwlFunction.

    f(x) = t0 x + b0 + sum_s gains[s] * max(0, <a_s, x> - c_s)
    with hyperplanes = [(a_s, c_s)].
    """
    cells = []
    for signs in itertools.product((0, 1), repeat=len(hyperplanes)):
        rows = []
        tmat = [list(r) for r in t0]
        boff = list(b0)
        for s, ((a, c), bit) in enumerate(zip(hyperplanes, signs)):
            if bit:
                rows.append(row([-x for x in a], -c))
                for r in range(q):
                    for j in range(p):
                        tmat[r][j] += gains[s][r] * a[j]
                    boff[r] -= gains[s][r] * c
            else:
                rows.append(row(a, c))
        cell = GenPolyhedron(p, tuple(rows))
        if not ph.has_nonempty_interior(cell):
            continue
        cells.append((cell, AffineMap(tmat, boff)))
    return PwlFunction(p, q, tuple(cells))


def test_evaluate_abs():
    f = abs_value()
    assert pwl.evaluate(f, [F(-3)]) == (F(3),)
    assert pwl.evaluate(f, [F(0)]) == (F(0),)
    assert pwl.evaluate(f, [F(2)]) == (F(2),)


def test_evaluate_single_cell():
    f = PwlFunction(1, 2, ((whole_space(1), AffineMap([[1], [-1]], [0, 1])),))
    assert pwl.evaluate(f, [F(1, 2)]) == (F(1, 2), F(1, 2))


def test_evaluate_outside_cells_raises():
    f = PwlFunction(1, 1, ((GenPolyhedron(1, (row([1], 0),)),
                            AffineMap([[1]], [0])),))
    with pytest.raises(ValueError):
        pwl.evaluate(f, [F(1)])


def test_validate_ok():
    rep = pwl.validate(abs_value())
    assert rep.ok


def test_validate_consistency_violation():
    left = GenPolyhedron(1, (row([1], 0),))
    right = GenPolyhedron(1, (row([-1], 0),))
    f = PwlFunction(1, 1, (
        (left, AffineMap([[1]], [0])),
        (right, AffineMap([[1]], [1])),
    ))
    rep = pwl.validate(f)
    assert not rep.ok
    assert any(v.kind == "consistency" for v in rep.violations)


def test_validate_coverage_violation():
    f = PwlFunction(1, 1, ((GenPolyhedron(1, (row([1], 0),)),
                            AffineMap([[1]], [0])),))
    rep = pwl.validate(f)
    assert not rep.ok
    assert any(v.kind == "coverage" for v in rep.violations)


def test_canonicalize_drops_thin_cells():
    thin = GenPolyhedron(2, ph.eq_rows([1, 0], 0))
    half_l = GenPolyhedron(2, (row([1, 0], 0),))
    half_r = GenPolyhedron(2, (row([-1, 0], 0),))
    ident = AffineMap([[1, 0], [0, 1]], [0, 0])
    f = PwlFunction(2, 2, ((thin, ident), (half_l, ident), (half_r, ident)))
    g = pwl.canonicalize_pwl(f)
    assert all(ph.has_nonempty_interior(c) for c, _ in g.cells)
    # pairwise cell_i meet int(cell_j) is empty
    for i, (ci, _) in enumerate(g.cells):
        for j, (cj, _) in enumerate(g.cells):
            if i != j:
                assert ph.is_empty(ph.intersect(ci, ph.interior(cj)))


def test_canonicalize_preserves_function():
    f = hinge_function(
        2, 2,
        [((F(1), F(1)), F(0)), ((F(1), F(-1)), F(1))],
        ((F(1), F(0)), (F(0), F(1))), (F(0), F(0)),
        [(F(1), F(2)), (F(-1), F(1))])
    g = pwl.canonicalize_pwl(f)
    rng = random.Random(0)
    for _ in range(25):
        x = vec([F(rng.randint(-8, 8), 4), F(rng.randint(-8, 8), 4)])
        assert pwl.evaluate(f, x) == pwl.evaluate(g, x)


def test_canonicalize_merges_duplicate_affine_cells():
    a = GenPolyhedron(1, (row([1], 1),))
    b = GenPolyhedron(1, (row([-1], 0),))
    ident = AffineMap([[1]], [0])
    f = PwlFunction(1, 1, ((a, ident), (b, ident)))
    g = pwl.canonicalize_pwl(f)
    for k in range(-8, 9):
        x = (F(k, 2),)
        assert pwl.evaluate(g, x) == x
    for i, (ci, _) in enumerate(g.cells):
        for j, (cj, _) in enumerate(g.cells):
            if i != j:
                assert ph.is_empty(ph.intersect(ci, ph.interior(cj)))


def test_common_refinement():
    f = abs_value()
    g = PwlFunction(1, 1, (
        (GenPolyhedron(1, (row([1], 1),)), AffineMap([[0]], [0])),
        (GenPolyhedron(1, (row([-1], -1),)), AffineMap([[1]], [-1])),
    ))
    f2, g2 = pwl.common_refinement(f, g)
    assert f2.pieces == g2.pieces == 3
    for k in range(-8, 9):
        x = (F(k, 2),)
        assert pwl.evaluate(f2, x) == pwl.evaluate(f, x)
        assert pwl.evaluate(g2, x) == pwl.evaluate(g, x)


def test_common_refinement_with_linear():
    f = abs_value()
    lin = PwlFunction(1, 1, ((whole_space(1), AffineMap([[2]], [0])),))
    f2, lin2 = pwl.common_refinement(f, lin)
    assert f2.pieces == 2


def test_common_linear_space_abs():
    xf = pwl.common_linear_space(pwl.canonicalize_pwl(abs_value()))
    assert xf.space_dim == 0


def test_common_linear_space_linear():
    f = PwlFunction(2, 1, ((whole_space(2), AffineMap([[1, 2]], [3])),))
    xf = pwl.common_linear_space(f)
    assert xf.space_dim == 2


def test_common_linear_space_q3():
    # all generators supported on coordinate 1: X_f = span{e2, e3}
    f = hinge_function(
        3, 2,
        [((F(1), F(0), F(0)), F(0))],
        ((F(1), F(0), F(1)), (F(0), F(1), F(0))), (F(0), F(0)),
        [(F(2), F(1))])
    g = pwl.canonicalize_pwl(f)
    xf = pwl.common_linear_space(g)
    assert xf.space_dim == 2
    for v in xf.basis:
        imgs = {matvec(m.matrix, v) for _, m in g.cells}
        assert len(imgs) == 1


def test_decompose_identity_abs():
    f = pwl.canonicalize_pwl(abs_value())
    dec = pwl.decompose(f)
    assert dec.x1.space_dim == 0
    for k in range(-6, 7):
        x = (F(k, 2),)
        assert pwl.evaluate(dec.g, x) == pwl.evaluate(f, x)


def test_decompose_identity_linear():
    f = PwlFunction(2, 2, ((whole_space(2),
                            AffineMap([[1, 0], [1, 1]], [2, 3])),))
    dec = pwl.decompose(f)
    assert dec.x1.space_dim == 2
    assert len(dec.x2.basis) == 0
    # g is constant = offset
    assert pwl.evaluate(dec.g, ()) == (F(2), F(3))


def test_decompose_identity_q3_grid():
    f = pwl.canonicalize_pwl(hinge_function(
        3, 2,
        [((F(1), F(0), F(0)), F(1))],
        ((F(1), F(0), F(1)), (F(0), F(1), F(0))), (F(1), F(0)),
        [(F(2), F(1))]))
    dec = pwl.decompose(f)
    vals = [F(-1), F(0), F(1), F(2), F(1, 2)]
    for t1 in vals:
        for c1 in vals:
            # x = x1 + x2 with x1 in X1, x2 in X2
            x1 = vec([0, 0, 0])
            for coef, b in zip((t1, c1), dec.x1.basis):
                x1 = tuple(a + coef * bb for a, bb in zip(x1, b))
            coords = [t1, c1][:len(dec.x1.basis)]
            for t2 in vals:
                x2 = vec([0, 0, 0])
                for coef, b in zip([t2], dec.x2.basis):
                    x2 = tuple(a + coef * bb for a, bb in zip(x2, b))
                x = tuple(a + b for a, b in zip(x1, x2))
                lhs = pwl.evaluate(f, x)
                rhs = tuple(a + b for a, b in zip(
                    dec.apply_linear_part(coords),
                    pwl.evaluate(dec.g, [t2][:len(dec.x2.basis)])))
                assert lhs == rhs


def test_yhat_dimension_bound():
    f = pwl.canonicalize_pwl(abs_value())
    dec = pwl.decompose(f)
    m = f.pieces
    assert len(dec.yhat.basis) <= m * len(dec.x2.basis) + 1


def test_graph_polyhedra_abs():
    f = abs_value()
    gs = pwl.graph_polyhedra(f)
    assert len(gs) == 2
    for k in range(-6, 7):
        x = (F(k, 2),)
        y = pwl.evaluate(f, x)
        assert ph.union_contains_point(gs, x + y)
        assert not ph.union_contains_point(gs, x + (y[0] + 1,))


def test_graph_polyhedra_linear():
    f = PwlFunction(2, 1, ((whole_space(2), AffineMap([[1, 1]], [0])),))
    gs = pwl.graph_polyhedra(f)
    assert len(gs) == 1
    assert gs[0].contains(vec([1, 2, 3]))
    assert not gs[0].contains(vec([1, 2, 4]))
