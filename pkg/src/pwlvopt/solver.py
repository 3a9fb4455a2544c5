"""Top-level solving of the piecewise linear vector problem.

Branches first on the two degeneracy conditions: when the value subspace
misses int(C) every feasible point is weakly efficient, and when the
reduced cone differs from the cone's trace on the value subspace there
are no efficient points at all.  Otherwise the reduced images are handed
to the order machinery, the resulting value pieces are pulled back
through the affine objective pieces, and everything is lifted by X1 into
the original space with face certificates re-expressed on the feasible
cells.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import order
from . import polyhedra as ph
from .linalg import Vec, ZERO, dot, vec
from .order import EfficientPiece
from .polyhedra import FaceCertificate, GenPolyhedron, Halfspace, Subspace
from .reduction import PlpInstance, ReducedProblem, reduce_instance


@dataclass(frozen=True)
class SolutionPiece:
    piece: GenPolyhedron           # subset of the domain (or value) space
    subproblem: int
    source: GenPolyhedron | None   # prime form of A_i (None for value pieces)
    face: FaceCertificate | None   # rows of `source` active on the piece

    def face_polyhedron(self) -> GenPolyhedron:
        if self.source is None or self.face is None:
            raise ValueError("piece carries no face certificate")
        return ph.face_of(self.source, self.face.active_rows)


@dataclass(frozen=True)
class SubproblemSolution:
    index: int
    faces: tuple[GenPolyhedron, ...]   # union of these faces = S_i (or S_i^w)
    branch: str                        # "none" | "all_feasible" | "no_pareto"


@dataclass(frozen=True)
class PlpSolution:
    kind: str                          # "pareto" | "weak_pareto"
    branch: str                        # "none" | "all_feasible" | "no_pareto"
    solution_pieces: tuple[SolutionPiece, ...]
    value_pieces: tuple[SolutionPiece, ...]
    per_subproblem: tuple[SubproblemSolution, ...]
    reduced: ReducedProblem

    def contains_solution(self, x: Sequence[Fraction]) -> bool:
        return any(p.piece.contains(x) for p in self.solution_pieces)

    def contains_value(self, y: Sequence[Fraction]) -> bool:
        return any(p.piece.contains(y) for p in self.value_pieces)


def _prime_or_self(p: GenPolyhedron) -> GenPolyhedron:
    p = ph.canonicalize(p)
    return p if p.is_whole_space else ph.prime_generator_group(p)


def _lift_to_domain(red: ReducedProblem, piece: GenPolyhedron,
                    p_dim: int) -> GenPolyhedron:
    """X1 + H(piece): h-coordinates back to the domain space."""
    img = ph.affine_image(piece, red.h_matrix_rows(p_dim))
    return ph.canonicalize(ph.subspace_sum(red.x1, img))


def _lift_to_value(red: ReducedProblem, piece: GenPolyhedron,
                   q_dim: int) -> GenPolyhedron:
    """T(X1) + U(piece): Z-coordinates back to the value space."""
    img = ph.affine_image(piece, red.u_matrix_rows(q_dim))
    span = Subspace(q_dim, red.that_image_basis)
    return ph.canonicalize(ph.subspace_sum(span, img))


def _reduced_images(inst: PlpInstance,
                    red: ReducedProblem) -> dict[int, GenPolyhedron]:
    """B_i: image of each nonempty reduced feasible cell in Z-coordinates."""
    out = {}
    for i in red.feasible_indices:
        out[i] = ph.canonicalize(ph.affine_image(
            red.cells_hat[i], red.fhat[i].matrix, red.fhat[i].offset))
    return out


def _pullback_pieces(inst: PlpInstance, red: ReducedProblem,
                     members: Sequence[EfficientPiece],
                     index_map: Sequence[int]) -> list[tuple[int, GenPolyhedron]]:
    """Preimages of value pieces inside their reduced feasible cells."""
    out = []
    for m in members:
        i = index_map[m.source_index]
        pre = ph.affine_preimage(m.piece, red.fhat[i].matrix,
                                 red.fhat[i].offset, domain_dim=red.nu)
        piece = ph.intersect(red.cells_hat[i], pre)
        if not ph.is_empty(piece):
            out.append((i, piece))
    return out


def _certified_domain_piece(inst: PlpInstance, red: ReducedProblem, i: int,
                            piece_hat: GenPolyhedron,
                            ahat_prime: GenPolyhedron,
                            a_prime: GenPolyhedron) -> SolutionPiece:
    """Lift a reduced solution piece and re-express its face on A_i."""
    cert_hat = ph.smallest_face_containing(ahat_prime, piece_hat)
    face_hat = ph.face_of(ahat_prime, cert_hat.active_rows)
    piece_x = _lift_to_domain(red, piece_hat, inst.p)
    face_x = _lift_to_domain(red, face_hat, inst.p)
    cert_x = ph.smallest_face_containing(a_prime, face_x)
    return SolutionPiece(piece_x, i, a_prime, cert_x)


def solve_weak(inst: PlpInstance, red: ReducedProblem | None = None,
               with_subproblems: bool = True) -> PlpSolution:
    """Weak Pareto solution and value sets."""
    if red is None:
        red = reduce_instance(inst)
    live = red.feasible_indices
    if not red.int_condition:
        pieces = []
        values = []
        for i in live:
            a_i = inst.feasible_cell(i)
            a_prime = _prime_or_self(a_i)
            pieces.append(SolutionPiece(ph.canonicalize(a_i), i, a_prime,
                                        FaceCertificate(frozenset())))
            values.append(SolutionPiece(
                ph.canonicalize(ph.affine_image(
                    a_i, inst.objectives[i].matrix, inst.objectives[i].offset)),
                i, None, None))
        subs = _subproblems(inst, red, "weak") if with_subproblems else ()
        return PlpSolution("weak_pareto", "all_feasible", tuple(pieces),
                           tuple(values), subs, red)

    images = _reduced_images(inst, red)
    index_map = list(images.keys())
    ws = order.weak_pareto_set([images[i] for i in index_map], red.cone_z)
    sol_pieces = []
    val_pieces = []
    for i, piece_hat in _pullback_pieces(inst, red, ws.pieces, index_map):
        ahat_prime = _prime_or_self(red.cells_hat[i])
        a_prime = _prime_or_self(inst.feasible_cell(i))
        sol_pieces.append(_certified_domain_piece(
            inst, red, i, piece_hat, ahat_prime, a_prime))
    for m in ws.pieces:
        i = index_map[m.source_index]
        val_pieces.append(SolutionPiece(
            _lift_to_value(red, m.piece, inst.q), i, None, None))
    subs = _subproblems(inst, red, "weak") if with_subproblems else ()
    return PlpSolution("weak_pareto", "none", tuple(sol_pieces),
                       tuple(val_pieces), subs, red)


def solve_pareto(inst: PlpInstance, red: ReducedProblem | None = None,
                 with_subproblems: bool = True) -> PlpSolution:
    """Pareto solution and value sets."""
    if red is None:
        red = reduce_instance(inst)
    if not red.cone_condition:
        subs = _subproblems(inst, red, "pareto") if with_subproblems else ()
        return PlpSolution("pareto", "no_pareto", (), (), subs, red)
    images = _reduced_images(inst, red)
    index_map = list(images.keys())
    es = order.pareto_set([images[i] for i in index_map], red.cone_z)
    sol_pieces = []
    val_pieces = []
    for i, piece_hat in _pullback_pieces(inst, red, es.pieces, index_map):
        ahat_prime = _prime_or_self(red.cells_hat[i])
        a_prime = _prime_or_self(inst.feasible_cell(i))
        sol_pieces.append(_certified_domain_piece(
            inst, red, i, piece_hat, ahat_prime, a_prime))
    for m in es.pieces:
        i = index_map[m.source_index]
        val_pieces.append(SolutionPiece(
            _lift_to_value(red, m.piece, inst.q), i, None, None))
    subs = _subproblems(inst, red, "pareto") if with_subproblems else ()
    return PlpSolution("pareto", "none", tuple(sol_pieces),
                       tuple(val_pieces), subs, red)


def solve_weak_scalarization(inst: PlpInstance,
                             red: ReducedProblem | None = None) -> PlpSolution:
    """Weak Pareto set via the supporting-functional route; requires the
    union of reduced images plus the cone to be convex."""
    if red is None:
        red = reduce_instance(inst)
    if not red.int_condition:
        return solve_weak(inst, red, with_subproblems=False)
    images = _reduced_images(inst, red)
    index_map = list(images.keys())
    sc = order.scalarization_weak_pareto([images[i] for i in index_map],
                                         red.cone_z)
    sol_pieces = []
    val_pieces = []
    for i, piece_hat in _pullback_pieces(inst, red, sc.pieces, index_map):
        ahat_prime = _prime_or_self(red.cells_hat[i])
        a_prime = _prime_or_self(inst.feasible_cell(i))
        sol_pieces.append(_certified_domain_piece(
            inst, red, i, piece_hat, ahat_prime, a_prime))
    for m in sc.pieces:
        i = index_map[m.source_index]
        val_pieces.append(SolutionPiece(
            _lift_to_value(red, m.piece, inst.q), i, None, None))
    return PlpSolution("weak_pareto", "none", tuple(sol_pieces),
                       tuple(val_pieces), (), red)


def solve_linear_subproblem(inst: PlpInstance, i: int,
                            red: ReducedProblem | None = None
                            ) -> tuple[SubproblemSolution, SubproblemSolution]:
    """(S_i, S_i^w) of the i-th linear subproblem, as unions of faces of A_i."""
    if red is None:
        red = reduce_instance(inst)
    ahat = red.cells_hat[i]
    if ph.is_empty(ahat):
        return (SubproblemSolution(i, (), "none"),
                SubproblemSolution(i, (), "none"))

    if not red.cone_condition:
        pareto = SubproblemSolution(i, (), "no_pareto")
    else:
        faces = _subproblem_faces(inst, red, i, weak=False)
        pareto = SubproblemSolution(i, faces, "none")

    if not red.int_condition:
        a_i = ph.canonicalize(inst.feasible_cell(i))
        weak = SubproblemSolution(i, (a_i,), "all_feasible")
    else:
        faces = _subproblem_faces(inst, red, i, weak=True)
        weak = SubproblemSolution(i, faces, "none")
    return pareto, weak


def _subproblem_faces(inst: PlpInstance, red: ReducedProblem, i: int,
                      weak: bool) -> tuple[GenPolyhedron, ...]:
    b = ph.canonicalize(ph.affine_image(
        red.cells_hat[i], red.fhat[i].matrix, red.fhat[i].offset))
    if weak:
        _, face_pieces = order.weak_pareto_faces(b, red.cone_z)
    else:
        _, face_pieces = order.pareto_faces(b, red.cone_z)
    ahat_prime = _prime_or_self(red.cells_hat[i])
    a_prime = _prime_or_self(inst.feasible_cell(i))
    seen: set[frozenset[int]] = set()
    out: list[GenPolyhedron] = []
    for _, piece_z in face_pieces:
        pre = ph.affine_preimage(piece_z, red.fhat[i].matrix,
                                 red.fhat[i].offset, domain_dim=red.nu)
        piece_hat = ph.intersect(red.cells_hat[i], pre)
        if ph.is_empty(piece_hat):
            continue
        cert = ph.smallest_face_containing(ahat_prime, piece_hat)
        face_x = _lift_to_domain(red, ph.face_of(ahat_prime, cert.active_rows),
                                 inst.p)
        cert_x = ph.smallest_face_containing(a_prime, face_x)
        if cert_x.active_rows not in seen:
            seen.add(cert_x.active_rows)
            out.append(ph.canonicalize(ph.face_of(a_prime, cert_x.active_rows)))
    return tuple(out)


def _subproblems(inst: PlpInstance, red: ReducedProblem,
                 kind: str) -> tuple[SubproblemSolution, ...]:
    out = []
    for i in range(inst.m):
        pareto, weak = solve_linear_subproblem(inst, i, red)
        out.append(pareto if kind == "pareto" else weak)
    return tuple(out)


# ---------------------------------------------------------------------------
# point tests against a single linear subproblem (certificate checking)


def is_subproblem_weak_solution(inst: PlpInstance, i: int,
                                x: Sequence[Fraction]) -> bool:
    """x in A_i with no x' in A_i whose value strictly dominates f_i(x)."""
    x = vec(x)
    a_i = inst.feasible_cell(i)
    if not a_i.contains(x):
        return False
    t = inst.objectives[i]
    y = t.apply(x)
    rows = list(a_i.rows)
    for r in ph.canonicalize(inst.cone.rep).rows:
        # <r, y - (T x' + b)> < 0
        co = tuple(-dot(r.coeffs, tuple(t.matrix[k][j] for k in range(inst.q)))
                   for j in range(inst.p))
        bound = -dot(r.coeffs, y) + dot(r.coeffs, t.offset)
        rows.append(Halfspace(co, bound, True))
    return ph.is_empty(GenPolyhedron(inst.p, tuple(rows)))


def is_subproblem_pareto_solution(inst: PlpInstance, i: int,
                                  x: Sequence[Fraction]) -> bool:
    """x in A_i and the dominating values of f_i over A_i reduce to f_i(x)."""
    x = vec(x)
    a_i = inst.feasible_cell(i)
    if not a_i.contains(x):
        return False
    t = inst.objectives[i]
    y = t.apply(x)
    rows = list(a_i.rows)
    for r in ph.canonicalize(inst.cone.rep).rows:
        co = tuple(-dot(r.coeffs, tuple(t.matrix[k][j] for k in range(inst.q)))
                   for j in range(inst.p))
        bound = -dot(r.coeffs, y) + dot(r.coeffs, t.offset)
        rows.append(Halfspace(co, bound, False))
    sys = GenPolyhedron(inst.p, tuple(rows))
    if ph.is_empty(sys):
        return True
    for k in range(inst.q):
        trow = t.matrix[k] if t.matrix else (ZERO,) * inst.p
        target = y[k] - t.offset[k]
        hi = ph.supremum(sys, trow)
        if hi.status is not ph.lp.LpStatus.OPTIMAL or hi.value != target:
            return False
        lo = ph.supremum(sys, tuple(-a for a in trow))
        if lo.status is not ph.lp.LpStatus.OPTIMAL or -lo.value != target:
            return False
    return True
