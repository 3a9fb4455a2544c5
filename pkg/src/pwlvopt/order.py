"""Efficient-point machinery over unions of polyhedra in an ordered space.

Point tests implement the definitions directly.  Set computations follow
the face route: the efficient subset of a single polyhedron B is read off
the exposed faces of B + C (efficiency is constant on relative interiors
of those faces), and unions are assembled with the set-difference formula

  E(U B_i, C) = U_i  meet_j ( E(B_i,C) \\ ((B_j+C) \\ E(B_j,C)) )

with every difference expanded into explicit generalized polyhedra.
Weak efficiency uses the complement of int(B_j + C) row by row, which
keeps all pieces plain polyhedra.  Every output piece carries the
smallest face of its source polyhedron containing it; those faces are
entirely (weakly) efficient for the source.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import polyhedra as ph
from .linalg import Vec, ZERO, dot, vec, vscale
from .polyhedra import (Cone, FaceCertificate, GenPolyhedron, Halfspace,
                        eq_rows)


@dataclass(frozen=True)
class EfficientPiece:
    piece: GenPolyhedron
    source_index: int
    source: GenPolyhedron          # prime form of the source polyhedron
    face: FaceCertificate          # rows of `source` active on the piece

    def face_polyhedron(self) -> GenPolyhedron:
        return ph.face_of(self.source, self.face.active_rows)


@dataclass(frozen=True)
class EfficientSet:
    pieces: tuple[EfficientPiece, ...]
    cone: Cone

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    def contains_point(self, y: Sequence[Fraction]) -> bool:
        return any(p.piece.contains(y) for p in self.pieces)


def _require_membership(y: Vec, bs: Sequence[GenPolyhedron]) -> None:
    if not any(b.contains(y) for b in bs):
        raise ValueError("point tests require a point of the union")


def is_weak_pareto_point(y: Sequence[Fraction], bs: Sequence[GenPolyhedron],
                         cone: Cone) -> bool:
    """No v in the union with y - v in int(C)."""
    if not cone.has_nonempty_interior():
        raise ValueError("int(C) is empty: weak efficiency is undefined; "
                         "use the degenerate branch")
    y = vec(y)
    _require_membership(y, bs)
    dom_rows = tuple(
        Halfspace(vscale(Fraction(-1), r.coeffs), -dot(r.coeffs, y), True)
        for r in ph.canonicalize(cone.rep).rows)
    for b in bs:
        if not ph.is_empty(GenPolyhedron(b.dim, b.rows + dom_rows)):
            return False
    return True


def is_pareto_point(y: Sequence[Fraction], bs: Sequence[GenPolyhedron],
                    cone: Cone) -> bool:
    """B_j meet (y - C) is contained in {y} for every j."""
    y = vec(y)
    _require_membership(y, bs)
    shift_rows = tuple(
        Halfspace(vscale(Fraction(-1), r.coeffs), -dot(r.coeffs, y))
        for r in cone.rep.rows)
    for b in bs:
        inter = ph.canonicalize(GenPolyhedron(b.dim, b.rows + shift_rows))
        if ph.is_empty(inter):
            continue
        if ph.dimension(inter) > 0:
            return False
        if ph.singleton_point(inter) != y:
            return False
    return True


def _prime_or_self(b: GenPolyhedron) -> GenPolyhedron:
    b = ph.canonicalize(b)
    return b if b.is_whole_space else ph.prime_generator_group(b)


def _faces_of(d: GenPolyhedron) -> list[tuple[FaceCertificate, GenPolyhedron]]:
    if d.is_whole_space:
        return [(FaceCertificate(frozenset()), d)]
    return ph.enumerate_exposed_faces(d, assume_prime=True)


def pareto_faces(b: GenPolyhedron, cone: Cone
                 ) -> tuple[GenPolyhedron, list[tuple[FaceCertificate, GenPolyhedron]]]:
    """Efficient subset of a single nonempty polyhedron as face pieces.

    Walks the exposed faces of D = B + C, tests one relative-interior
    witness per face against D itself (E(B,C) = E(D,C)), and intersects
    the efficient faces back with B.  Returns (prime form of B, pieces
    tagged with the smallest containing face of B).
    """
    b_prime = _prime_or_self(b)
    d = ph.canonicalize(ph.minkowski_sum(b, cone.rep))
    if not d.is_whole_space:
        d = ph.prime_generator_group(d)
    out = []
    for _, face in _faces_of(d):
        witness = ph.relative_interior_samples(face, 1)[0]
        if is_pareto_point(witness, [d], cone):
            piece = ph.intersect(face, b)
            if not ph.is_empty(piece):
                cert = ph.smallest_face_containing(b_prime, piece)
                out.append((cert, piece))
    return b_prime, out


def weak_pareto_faces(b: GenPolyhedron, cone: Cone
                      ) -> tuple[GenPolyhedron, list[tuple[FaceCertificate, GenPolyhedron]]]:
    """WE(B, C) for a single polyhedron as pieces B meet {row >= bound},
    one per prime row of B + C, tagged with containing faces of B."""
    if not cone.has_nonempty_interior():
        raise ValueError("int(C) is empty")
    b_prime = _prime_or_self(b)
    d = ph.canonicalize(ph.minkowski_sum(b, cone.rep))
    if d.is_whole_space:
        return b_prime, []
    d = ph.prime_generator_group(d)
    out = []
    for r in d.rows:
        piece = ph.add_rows(b, eq_rows(r.coeffs, r.bound))
        if not ph.is_empty(piece):
            cert = ph.smallest_face_containing(b_prime, piece)
            out.append((cert, piece))
    return b_prime, out


def _subtract_tagged(pieces: list[tuple[GenPolyhedron, FaceCertificate]],
                     hole: GenPolyhedron, nested: bool
                     ) -> list[tuple[GenPolyhedron, FaceCertificate]]:
    out: list[tuple[GenPolyhedron, FaceCertificate]] = []
    for piece, cert in pieces:
        pc = ph.subtract([piece], hole, nested=nested)
        out.extend((x, cert) for x in pc)
    return out


def weak_pareto_set(bs: Sequence[GenPolyhedron], cone: Cone) -> EfficientSet:
    """WE of a finite union of nonempty polyhedra w.r.t. a solid cone.

    V_i = B_i \\ U_j int(B_j + C), expanded row-by-row (j ascending, rows
    ascending) so every piece is a plain polyhedron.
    """
    if not cone.has_nonempty_interior():
        raise ValueError("int(C) is empty: use the degenerate branch")
    live = [(i, ph.canonicalize(b)) for i, b in enumerate(bs)
            if not ph.is_empty(b)]
    interiors: list[GenPolyhedron] = []
    for _, b in live:
        d = ph.canonicalize(ph.minkowski_sum(b, cone.rep))
        if not d.is_whole_space:
            d = ph.prime_generator_group(d)
        interiors.append(ph.interior(d))
    members: list[EfficientPiece] = []
    for (i, b) in live:
        pieces: list[tuple[GenPolyhedron, FaceCertificate | None]] = [(b, None)]
        for hole in interiors:
            pieces = _subtract_tagged(pieces, hole, nested=False)
            if not pieces:
                break
        if not pieces:
            continue
        b_prime = _prime_or_self(b)
        for piece, _ in pieces:
            cert = ph.smallest_face_containing(b_prime, piece)
            members.append(EfficientPiece(piece, i, b_prime, cert))
    return EfficientSet(tuple(members), cone)


def pareto_set(bs: Sequence[GenPolyhedron], cone: Cone) -> EfficientSet:
    """E of a finite union of nonempty polyhedra w.r.t. a polyhedral cone,
    assembled by the union formula over per-polyhedron face pieces."""
    live = [(i, ph.canonicalize(b)) for i, b in enumerate(bs)
            if not ph.is_empty(b)]
    per: dict[int, tuple[GenPolyhedron, list[tuple[FaceCertificate, GenPolyhedron]]]] = {}
    holes_per_j: dict[int, list[GenPolyhedron]] = {}
    for i, b in live:
        b_prime, faces = pareto_faces(b, cone)
        per[i] = (b_prime, faces)
        d = ph.canonicalize(ph.minkowski_sum(b, cone.rep))
        holes_per_j[i] = ph.subtract_union([d], [pc for _, pc in faces])
    members: list[EfficientPiece] = []
    for i, _ in live:
        b_prime, faces = per[i]
        pieces = [(pc, cert) for cert, pc in faces]
        for j, _ in live:
            for hole in holes_per_j[j]:
                pieces = _subtract_tagged(pieces, hole, nested=True)
            if not pieces:
                break
        for piece, cert in pieces:
            members.append(EfficientPiece(piece, i, b_prime, cert))
    return EfficientSet(tuple(members), cone)


def scalarization_weak_pareto(bs: Sequence[GenPolyhedron],
                              cone: Cone) -> EfficientSet:
    """WE of a C-convex union via supporting functionals of conv(U B_i + C).

    Candidate functionals are the outer normals of the prime generator
    group of the hull; each contributes its argmin face intersected with
    every B_i.  Raises when the union of the B_i + C is not convex.
    """
    if not cone.has_nonempty_interior():
        raise ValueError("int(C) is empty")
    live = [(i, ph.canonicalize(b)) for i, b in enumerate(bs)
            if not ph.is_empty(b)]
    if not live:
        return EfficientSet((), cone)
    ds = [ph.canonicalize(ph.minkowski_sum(b, cone.rep)) for _, b in live]
    hull = ds[0] if len(ds) == 1 else _convex_hull_of_union(ds)
    leftovers = ph.subtract_union([hull], ds)
    if leftovers:
        raise ValueError("the union of the images plus the cone is not convex; "
                         "the scalarization route does not apply")
    if hull.is_whole_space:
        return EfficientSet((), cone)
    hull = ph.prime_generator_group(hull)
    members: list[EfficientPiece] = []
    primes = {i: _prime_or_self(b) for i, b in live}
    for r in hull.rows:
        for i, b in live:
            piece = ph.add_rows(b, eq_rows(r.coeffs, r.bound))
            if not ph.is_empty(piece):
                cert = ph.smallest_face_containing(primes[i], piece)
                members.append(EfficientPiece(piece, i, primes[i], cert))
    return EfficientSet(tuple(members), cone)


def _convex_hull_of_union(ds: Sequence[GenPolyhedron]) -> GenPolyhedron:
    """Closed convex hull of a union of nonempty polyhedra (disjunctive
    lifting: z = sum x_i, A_i x_i <= lambda_i b_i, lambda in the simplex)."""
    q = ds[0].dim
    m = len(ds)
    total = q + m * q + m  # z block, x_i blocks, lambda block
    rows: list[Halfspace] = []

    def col(block: int, j: int) -> int:
        # block 0 = z, 1..m = x_i, m+1 = lambda
        if block == 0:
            return j
        if block <= m:
            return q + (block - 1) * q + j
        return q + m * q + j

    for idx, d in enumerate(ds):
        for r in d.rows:
            co = [ZERO] * total
            for j, a in enumerate(r.coeffs):
                co[col(idx + 1, j)] = a
            co[col(m + 1, idx)] = -r.bound
            rows.append(Halfspace(tuple(co), ZERO))
    for idx in range(m):
        co = [ZERO] * total
        co[col(m + 1, idx)] = -Fraction(1)
        rows.append(Halfspace(tuple(co), ZERO))
    co = [ZERO] * total
    for idx in range(m):
        co[col(m + 1, idx)] = Fraction(1)
    rows.extend(eq_rows(tuple(co), Fraction(1)))
    for j in range(q):
        co = [ZERO] * total
        co[col(0, j)] = Fraction(1)
        for idx in range(m):
            co[col(idx + 1, j)] = -Fraction(1)
        rows.extend(eq_rows(tuple(co), ZERO))
    lifted = GenPolyhedron(total, tuple(rows))
    return ph.project(lifted, list(range(q)))
