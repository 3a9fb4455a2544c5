import random
from fractions import Fraction

import pytest

from pwlvopt import polyhedra as ph
from pwlvopt.linalg import vec
from pwlvopt.polyhedra import (GenPolyhedron, Halfspace, Subspace, row,
                               whole_space)

F = Fraction


def box(dim, lo=0, hi=1):
    rows = []
    for i in range(dim):
        e = [0] * dim
        e[i] = 1
        rows.append(ph.row(e, hi))
        e2 = [0] * dim
        e2[i] = -1
        rows.append(ph.row(e2, -lo))
    return GenPolyhedron(dim, tuple(rows))


def interval(lo, hi):
    return GenPolyhedron(1, (ph.row([1], hi), ph.row([-1], -lo)))


def test_is_empty_basic():
    assert ph.is_empty(GenPolyhedron(1, (row([1], 0), row([-1], -1))))
    assert not ph.is_empty(whole_space(2))
    # x1 <= 0 and -x1 < 0 is contradictory
    assert ph.is_empty(GenPolyhedron(1, (row([1], 0), row([-1], 0, True))))


def test_affine_hull_line_in_plane():
    p = GenPolyhedron(2, (row([1, 0], 0), row([-1, 0], 0)))
    tight, dim = ph.affine_hull_and_dim(p)
    assert set(tight) == {0, 1}
    assert dim == 1


def test_affine_hull_square():
    tight, dim = ph.affine_hull_and_dim(box(2))
    assert tight == ()
    assert dim == 2


def test_affine_hull_segment_on_line():
    p = GenPolyhedron(2, (row([1, 1], 1), row([-1, -1], -1), row([1, 0], 1)))
    tight, dim = ph.affine_hull_and_dim(p)
    assert set(tight) == {0, 1}
    assert dim == 1


def test_affine_hull_empty_rejected():
    with pytest.raises(ValueError):
        ph.affine_hull_and_dim(GenPolyhedron(1, (row([1], 0), row([-1], -1))))


def test_relative_interior_interval():
    ri = ph.relative_interior(interval(0, 1))
    assert ri.contains((F(1, 2),))
    assert not ri.contains((F(0),))
    assert not ri.contains((F(1),))


def test_relative_interior_affine_set_is_itself():
    line = GenPolyhedron(2, (row([1, 0], 0), row([-1, 0], 0)))
    ri = ph.relative_interior(line)
    assert ph.set_equal(ri, line)


def test_relative_interior_triangle():
    tri = GenPolyhedron(2, (row([-1, 0], 0), row([0, -1], 0), row([1, 1], 1)))
    ri = ph.relative_interior(tri)
    assert ri.contains(vec([F(1, 4), F(1, 4)]))
    assert not ri.contains(vec([0, 0]))
    assert not ri.contains(vec([F(1, 2), F(1, 2)]))


def test_prime_generator_group_drops_redundant():
    p = GenPolyhedron(1, (row([1], 1), row([1], 2)))
    pg = ph.prime_generator_group(p)
    assert len(pg.rows) == 1
    assert pg.rows[0].bound == 1


def test_prime_generator_group_third_row_redundant():
    p = GenPolyhedron(2, (row([1, 0], 1), row([0, 1], 1), row([1, 1], 3)))
    pg = ph.prime_generator_group(p)
    assert len(pg.rows) == 2


def test_prime_generator_group_square_unchanged():
    sq = box(2)
    pg = ph.prime_generator_group(sq)
    assert len(pg.rows) == 4
    assert ph.set_equal(pg, sq)


def test_prime_generator_group_rejects_whole_space():
    with pytest.raises(ValueError):
        ph.prime_generator_group(whole_space(2))
    # a trivially-true system is the whole space after canonicalization
    with pytest.raises(ValueError):
        ph.prime_generator_group(GenPolyhedron(1, (row([0], 5),)))


def test_prime_rows_each_essential():
    rng = random.Random(7)
    for _ in range(10):
        rows = tuple(row([rng.randint(-2, 2), rng.randint(-2, 2)],
                          rng.randint(0, 3)) for _ in range(5))
        p = GenPolyhedron(2, rows)
        if ph.is_empty(p) or ph.canonicalize(p).is_whole_space:
            continue
        pg = ph.prime_generator_group(p)
        for i in range(len(pg.rows)):
            others = GenPolyhedron(2, pg.rows[:i] + pg.rows[i + 1:])
            # removing any surviving row strictly enlarges the set
            witness = GenPolyhedron(2, others.rows + (pg.rows[i].negated(),))
            assert not ph.is_empty(witness)


def test_recession_and_lineality():
    p = GenPolyhedron(2, (row([1, 0], 1),))
    rec, lin = ph.recession_and_lineality(p)
    assert rec.rep.contains(vec([-1, 5]))
    assert not rec.rep.contains(vec([1, 0]))
    assert lin.space_dim == 1
    assert lin.contains(vec([0, 3]))

    sq = box(2)
    rec2, lin2 = ph.recession_and_lineality(sq)
    assert ph.is_singleton(rec2.rep)
    assert lin2.space_dim == 0

    diag = GenPolyhedron(2, (row([1, -1], 0), row([-1, 1], 0)))
    rec3, lin3 = ph.recession_and_lineality(diag)
    assert lin3.space_dim == 1
    assert lin3.contains(vec([1, 1]))
    assert ph.set_equal(rec3.rep, diag)


def test_intersect():
    a = interval(0, 2)
    b = interval(1, 3)
    c = ph.intersect(a, b)
    assert c.contains((F(3, 2),))
    assert not c.contains((F(1, 2),))
    assert ph.set_equal(ph.intersect(a, whole_space(1)), a)
    assert ph.is_empty(ph.intersect(interval(0, 1), interval(2, 3)))


def test_minkowski_sum_intervals():
    s = ph.minkowski_sum(interval(0, 1), interval(0, 1))
    assert ph.set_equal(s, interval(0, 2))


def test_minkowski_sum_identity():
    p = box(2)
    zero = GenPolyhedron(2, tuple(r for i in range(2)
                                  for r in ph.eq_rows([1 if j == i else 0
                                                       for j in range(2)], 0)))
    s = ph.minkowski_sum(p, zero)
    assert ph.set_equal(s, p)


def test_minkowski_sum_square_plus_orthant():
    orth = GenPolyhedron(2, (row([-1, 0], 0), row([0, -1], 0)))
    s = ph.minkowski_sum(box(2), orth)
    assert ph.set_equal(s, orth)


def test_minkowski_sum_samples():
    rng = random.Random(3)
    p = GenPolyhedron(2, (row([1, 0], 2), row([-1, 0], 0), row([0, 1], 1),
                          row([0, -1], 0)))
    q = GenPolyhedron(2, (row([1, 1], 1), row([-1, 0], 1), row([0, -1], 1)))
    s = ph.minkowski_sum(p, q)
    for _ in range(20):
        a = vec([F(rng.randint(0, 8), 4), F(rng.randint(0, 4), 4)])
        b = vec([F(rng.randint(-4, 4), 4), F(rng.randint(-4, 4), 4)])
        if p.contains(a) and q.contains(b):
            assert s.contains(tuple(x + y for x, y in zip(a, b)))


def test_project_fm():
    p = GenPolyhedron(2, (row([1, 1], 1), row([0, -1], 0)))
    pr = ph.project(p, [0])
    assert ph.set_equal(pr, GenPolyhedron(1, (row([1], 1),)))

    assert ph.project(whole_space(3), [1, 2]).is_whole_space

    q = GenPolyhedron(2, ph.eq_rows([1, -1], 0) + (row([0, 1], 1), row([0, -1], 0)))
    pr2 = ph.project(q, [0])
    assert ph.set_equal(pr2, interval(0, 1))


def test_project_strictnessforwarding():
    p = GenPolyhedron(2, (row([1, 1], 1, True), row([0, -1], 0)))
    pr = ph.project(p, [0])
    assert len(pr.rows) == 1
    assert pr.rows[0].strict


def test_project_order_independent():
    p = GenPolyhedron(3, (row([1, 1, 1], 1), row([-1, 0, 1], 0),
                          row([0, -1, -1], 2)))
    a = ph.project(ph.project(p, [0, 1]), [0])
    b = ph.project(p, [0])
    assert ph.set_equal(a, b)


def test_decompose_along():
    p = GenPolyhedron(2, (row([1, 0], 1),))
    z1 = Subspace(2, (vec([0, 1]),))
    z2 = Subspace(2, (vec([1, 0]),))
    phat = ph.decompose_along(p, z1, z2)
    assert ph.set_equal(phat, GenPolyhedron(1, (row([1], 1),)))


def test_decompose_along_line():
    line = GenPolyhedron(2, ph.eq_rows([1, 0], 0))
    z1 = Subspace(2, (vec([0, 1]),))
    z2 = Subspace(2, (vec([1, 0]),))
    phat = ph.decompose_along(line, z1, z2)
    assert ph.is_singleton(phat)
    assert ph.singleton_point(phat) == (F(0),)


def test_decompose_along_diagonal_strip():
    p = GenPolyhedron(2, (row([1, 1], 2), row([-1, -1], 0)))
    z1 = Subspace(2, (vec([1, -1]),))
    z2 = Subspace(2, (vec([1, 1]),))
    phat = ph.decompose_along(p, z1, z2)
    # in z2-coordinates t: 0 <= 2t <= 2
    assert phat.contains((F(1, 2),))
    assert not phat.contains((F(2),))
    # reconstruction: subspace_sum(z1, lift(phat)) == p
    lifted = ph.affine_image(phat, tuple(zip(*((vec([1, 1]),)))))
    recon = ph.subspace_sum(z1, lifted)
    assert ph.set_equal(recon, p)


def test_decompose_along_precondition():
    p = GenPolyhedron(2, (row([1, 0], 1),))
    z1_bad = Subspace(2, (vec([1, 0]),))
    z2 = Subspace(2, (vec([0, 1]),))
    with pytest.raises(ValueError):
        ph.decompose_along(p, z1_bad, z2)


def test_prop21_reconstruction():
    # subspace_sum(Z1, decompose_along(P, Z1, Z2)) reconstructs P
    p = GenPolyhedron(3, (row([1, 1, 0], 1), row([-1, -1, 0], 1),
                          row([1, 1, 0], 2)))
    z1 = Subspace(3, (vec([0, 0, 1]), vec([1, -1, 0])))
    z2 = Subspace(3, (vec([1, 0, 0]),))
    phat = ph.decompose_along(p, z1, z2)
    lifted = ph.affine_image(phat, ((F(1),), (F(0),), (F(0),)))
    recon = ph.subspace_sum(z1, lifted)
    assert ph.set_equal(recon, p)


def test_subspace_sum():
    s = Subspace(2, (vec([0, 1]),))
    strip = ph.subspace_sum(s, box(2))
    assert ph.set_equal(strip, GenPolyhedron(2, (row([1, 0], 1), row([-1, 0], 0))))

    zero = Subspace(2, ())
    assert ph.set_equal(ph.subspace_sum(zero, box(2)), box(2))

    origin = GenPolyhedron(2, ph.eq_rows([1, 0], 0) + ph.eq_rows([0, 1], 0))
    diag = Subspace(2, (vec([1, 1]),))
    line = ph.subspace_sum(diag, origin)
    assert ph.set_equal(line, GenPolyhedron(2, ph.eq_rows([1, -1], 0)))


def test_faces_segment():
    faces = ph.enumerate_exposed_faces(interval(0, 1))
    assert len(faces) == 3
    dims = sorted(ph.dimension(f) for _, f in faces)
    assert dims == [0, 0, 1]


def test_faces_square():
    faces = ph.enumerate_exposed_faces(box(2))
    assert len(faces) == 9


def test_faces_triangle():
    tri = GenPolyhedron(2, (row([-1, 0], 0), row([0, -1], 0), row([1, 1], 1)))
    faces = ph.enumerate_exposed_faces(tri)
    assert len(faces) == 7


def test_faces_unbounded():
    orth = GenPolyhedron(2, (row([-1, 0], 0), row([0, -1], 0)))
    faces = ph.enumerate_exposed_faces(orth)
    # whole cone, two edge rays, vertex
    assert len(faces) == 4


def test_refine_partition_overlapping_intervals():
    cells = [interval(0, 2), interval(1, 3)]
    out = ph.refine_partition(cells)
    # same union on a fine grid
    for k in range(-8, 33):
        x = (F(k, 8),)
        assert ph.union_contains_point(cells, x) == ph.union_contains_point(out, x)
    # pairwise interior-disjoint, all full-dimensional
    for i, a in enumerate(out):
        assert ph.has_nonempty_interior(a)
        for j, b in enumerate(out):
            if i != j:
                assert ph.is_empty(ph.intersect(a, ph.interior(b)))


def test_refine_partition_disjoint_unchanged_union():
    cells = [interval(0, 1), interval(2, 3)]
    out = ph.refine_partition(cells)
    for k in range(-4, 16):
        x = (F(k, 4),)
        assert ph.union_contains_point(cells, x) == ph.union_contains_point(out, x)


def test_refine_partition_duplicate_absorbed():
    cells = [box(2), box(2)]
    out = ph.refine_partition(cells)
    assert len(out) == 1
    assert ph.set_equal(out[0], box(2))


def test_refine_partition_rejects_thin_cell():
    thin = GenPolyhedron(2, ph.eq_rows([1, 0], 0))
    with pytest.raises(ValueError):
        ph.refine_partition([thin])


def test_is_singleton():
    pt = GenPolyhedron(1, ph.eq_rows([1], 1))
    assert ph.is_singleton(pt)
    assert ph.singleton_point(pt) == (F(1),)
    assert not ph.is_singleton(interval(0, 1))
    assert not ph.is_singleton(GenPolyhedron(1, (row([1], 0), row([-1], -1))))


def test_contains_set_strict_aware():
    closed = interval(0, 1)
    open_iv = GenPolyhedron(1, (row([1], 1, True), row([-1], 0, True)))
    assert ph.contains_set(closed, open_iv)
    assert not ph.contains_set(open_iv, closed)


def test_subtract_union_exact():
    # [0,3] minus [1,2] = [0,1) U (2,3]
    pieces = ph.subtract([interval(0, 3)], interval(1, 2))
    for k in range(0, 13):
        x = (F(k, 4),)
        expected = interval(0, 3).contains(x) and not interval(1, 2).contains(x)
        assert ph.union_contains_point(pieces, x) == expected


def test_complement_pieces_cover():
    pieces = ph.complement_pieces(box(2))
    for a in range(-2, 7):
        for b in range(-2, 7):
            x = vec([F(a, 2), F(b, 2)])
            assert ph.union_contains_point(pieces, x) == (not box(2).contains(x))


def test_smallest_face_containing():
    sq = ph.prime_generator_group(box(2))
    corner = GenPolyhedron(2, ph.eq_rows([1, 0], 0) + ph.eq_rows([0, 1], 0))
    cert = ph.smallest_face_containing(sq, corner)
    face = ph.face_of(sq, cert.active_rows)
    assert ph.is_singleton(face)
    assert ph.singleton_point(face) == vec([0, 0])


def test_lemma22_face_equivalences():
    # polyhedra with nonempty interior: every F_j-degrees is nonempty
    rng = random.Random(11)
    tested = 0
    while tested < 8:
        rows = tuple(row([rng.randint(-2, 2), rng.randint(-2, 2)],
                          rng.randint(1, 3)) for _ in range(4))
        p = GenPolyhedron(2, rows)
        if ph.is_empty(p) or ph.canonicalize(p).is_whole_space:
            continue
        if not ph.has_nonempty_interior(p):
            continue
        pg = ph.prime_generator_group(p)
        tested += 1
        for j in range(len(pg.rows)):
            strict_others = tuple(r.as_strict() if i != j else r
                                  for i, r in enumerate(pg.rows))
            fj_circ = GenPolyhedron(2, strict_others + ph.eq_rows(
                pg.rows[j].coeffs, pg.rows[j].bound))
            assert not ph.is_empty(fj_circ)
