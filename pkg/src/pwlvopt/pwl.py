"""Piecewise linear vector-valued functions on rational space.

A function is a finite list of polyhedral cells, each carrying an affine
map; the cells must cover the whole space and the maps must agree on
every overlap.  Canonicalization produces interior-disjoint full
dimensional cells in prime generator form, after which the common linear
space (the largest subspace on which all linear parts coincide) and the
splitting f(x1+x2) = T(x1) + g(x2) are available.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import polyhedra as ph
from .linalg import (Mat, Vec, ZERO, dot, in_span, is_zero_vec, mat, matvec,
                     rank, unit_vec, vadd, vec)
from .polyhedra import GenPolyhedron, Halfspace, Subspace


@dataclass(frozen=True)
class AffineMap:
    """x -> matrix @ x + offset."""
    matrix: Mat
    offset: Vec

    def __post_init__(self):
        object.__setattr__(self, "matrix", mat(self.matrix))
        object.__setattr__(self, "offset", vec(self.offset))
        if len(self.matrix) != len(self.offset):
            raise ValueError("matrix rows must match offset length")

    @property
    def codomain_dim(self) -> int:
        return len(self.offset)

    def domain_dim(self, default: int | None = None) -> int:
        if self.matrix:
            return len(self.matrix[0])
        if default is None:
            raise ValueError("domain dimension unknown for empty matrix")
        return default

    def apply(self, x: Sequence[Fraction]) -> Vec:
        return vadd(matvec(self.matrix, x), self.offset)


@dataclass(frozen=True)
class PwlFunction:
    domain_dim: int
    codomain_dim: int
    cells: tuple[tuple[GenPolyhedron, AffineMap], ...]

    def __post_init__(self):
        for cell, m in self.cells:
            if not cell.is_polyhedron:
                raise ValueError("cells must be plain polyhedra")
            if cell.dim != self.domain_dim:
                raise ValueError("cell dimension mismatch")
            if m.codomain_dim != self.codomain_dim:
                raise ValueError("affine map codomain mismatch")
            if m.matrix and len(m.matrix[0]) != self.domain_dim:
                raise ValueError("affine map domain mismatch")

    @property
    def pieces(self) -> int:
        return len(self.cells)


def evaluate(f: PwlFunction, x: Sequence[Fraction]) -> Vec:
    """Value at x from the first cell containing it (ties are immaterial
    for a consistent function)."""
    x = vec(x)
    for cell, m in f.cells:
        if cell.contains(x):
            return m.apply(x)
    raise ValueError(f"no cell contains {x}: coverage violation")


@dataclass(frozen=True)
class Violation:
    kind: str           # "coverage" | "consistency"
    cells: tuple[int, ...]
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...]


def validate(f: PwlFunction) -> ValidationReport:
    """Exact coverage and overlap-consistency check."""
    out: list[Violation] = []
    gaps = ph.subtract_union([ph.whole_space(f.domain_dim)],
                             [c for c, _ in f.cells])
    for g in gaps:
        pt = ph.feasible_point(g)
        out.append(Violation("coverage", (),
                             f"uncovered region with witness {pt}"))
    for i in range(f.pieces):
        for j in range(i + 1, f.pieces):
            ci, mi = f.cells[i]
            cj, mj = f.cells[j]
            inter = ph.intersect(ci, cj)
            if ph.is_empty(inter):
                continue
            if not _maps_agree_on(inter, mi, mj):
                out.append(Violation(
                    "consistency", (i, j),
                    f"pieces {i} and {j} disagree on their overlap"))
    return ValidationReport(not out, tuple(out))


def _maps_agree_on(region: GenPolyhedron, a: AffineMap, b: AffineMap) -> bool:
    """(a - b) constant-zero on region, by per-row sup/inf tests."""
    q = a.codomain_dim
    n = region.dim
    for r in range(q):
        drow = tuple((a.matrix[r][j] if a.matrix else ZERO) -
                     (b.matrix[r][j] if b.matrix else ZERO) for j in range(n))
        target = b.offset[r] - a.offset[r]
        if is_zero_vec(drow):
            if target != 0:
                return False
            continue
        hi = ph.supremum(region, drow)
        if hi.status is not ph.lp.LpStatus.OPTIMAL or hi.value != target:
            return False
        lo = ph.supremum(region, tuple(-d for d in drow))
        if lo.status is not ph.lp.LpStatus.OPTIMAL or -lo.value != target:
            return False
    return True


def canonicalize_pwl(f: PwlFunction) -> PwlFunction:
    """Interior-disjoint full-dimensional cells in prime generator form.

    Cells with empty interior are dropped (the rest still covers), cells
    with identical affine data are grouped, and the partition refinement
    makes the result satisfy cell_i meet int(cell_j) empty for i != j.
    """
    full = [(c, m) for c, m in f.cells if ph.has_nonempty_interior(c)]
    groups: list[tuple[AffineMap, list[GenPolyhedron]]] = []
    index: dict[tuple, int] = {}
    for c, m in full:
        key = (m.matrix, m.offset)
        if key in index:
            groups[index[key]][1].append(c)
        else:
            index[key] = len(groups)
            groups.append((m, [c]))
    tagged = [(c, m) for m, cs in groups for c in cs]
    refined = ph.refine_partition_tagged(tagged)
    cells = []
    for piece, m in refined:
        if not piece.is_whole_space:
            piece = ph.prime_generator_group(piece)
        cells.append((piece, m))
    return PwlFunction(f.domain_dim, f.codomain_dim, tuple(cells))


def common_refinement(f: PwlFunction, g: PwlFunction
                      ) -> tuple[PwlFunction, PwlFunction]:
    """Re-express both functions on the nonempty-interior pairwise
    intersections of their cells (one shared cell list)."""
    if f.domain_dim != g.domain_dim:
        raise ValueError("domain dimension mismatch")
    shared: list[tuple[GenPolyhedron, AffineMap, AffineMap]] = []
    for ci, mi in f.cells:
        for cj, mj in g.cells:
            inter = ph.intersect(ci, cj)
            if ph.has_nonempty_interior(inter):
                shared.append((inter, mi, mj))
    f2 = PwlFunction(f.domain_dim, f.codomain_dim,
                     tuple((c, mi) for c, mi, _ in shared))
    g2 = PwlFunction(g.domain_dim, g.codomain_dim,
                     tuple((c, mj) for c, _, mj in shared))
    return f2, g2


def common_linear_space(f: PwlFunction) -> Subspace:
    """X_f: common null space of all cell generator functionals, verified
    to be a subspace on which all linear parts coincide."""
    functionals: list[Vec] = []
    for cell, _ in f.cells:
        if not cell.is_whole_space:
            functionals.extend(r.coeffs for r in
                               ph.prime_generator_group(cell).rows)
    xf = Subspace.from_nullspace(tuple(functionals), f.domain_dim)
    for v in xf.basis:
        images = {matvec(m.matrix, v) for _, m in f.cells}
        if len(images) > 1:
            raise ValueError(
                "linear parts disagree on the common null space: "
                "the function is not a consistent piecewise linear function")
    return xf


@dataclass(frozen=True)
class Decomposition:
    """f(x1 + x2) = T(x1) + g(t) with x2 = sum t_i h_i over the X2 basis."""
    x1: Subspace
    x2: Subspace
    t_matrix: Mat          # codomain x dim(X1), acting on X1-basis coords
    g: PwlFunction         # on X2 coordinates
    yhat: Subspace         # span of the values of g

    def apply_linear_part(self, x1_coords: Sequence[Fraction]) -> Vec:
        return matvec(self.t_matrix, x1_coords)


def complement_basis(s: Subspace) -> Subspace:
    """Standard-unit-vector extension of s to a complement (greedy scan)."""
    kept: list[Vec] = []
    base = list(s.basis)
    for i in range(s.dim):
        e = unit_vec(s.dim, i)
        if not in_span(base + kept, e):
            kept.append(e)
    return Subspace(s.dim, tuple(kept))


def decompose(f: PwlFunction, x1: Subspace | None = None,
              x2: Subspace | None = None) -> Decomposition:
    """Split a canonical f along X1 (default: the whole common linear
    space) and a complement X2 (default: greedy standard-vector one)."""
    xf = common_linear_space(f)
    if x1 is None:
        x1 = xf
    else:
        for v in x1.basis:
            if not xf.contains(v):
                raise ValueError("X1 is not inside the common linear space")
    if x2 is None:
        x2 = complement_basis(x1)
    stacked = x1.basis + x2.basis
    if len(stacked) != f.domain_dim or rank(stacked) != f.domain_dim:
        raise ValueError("X1 and X2 do not form a direct sum")

    t_cols = [matvec(f.cells[0][1].matrix, v) for v in x1.basis]
    for _, m in f.cells[1:]:
        for v, col in zip(x1.basis, t_cols):
            if matvec(m.matrix, v) != col:
                raise ValueError("linear parts disagree on X1")
    t_matrix = tuple(zip(*t_cols)) if t_cols else tuple(() for _ in range(f.codomain_dim))

    cells = []
    for cell, m in f.cells:
        if cell.is_whole_space:
            hat = ph.whole_space(len(x2.basis))
        else:
            hat = ph.decompose_along(cell, x1, x2)
        gmat = tuple(zip(*(matvec(m.matrix, h) for h in x2.basis))) \
            if x2.basis else tuple(() for _ in range(f.codomain_dim))
        cells.append((hat, AffineMap(gmat, m.offset)))
    g = PwlFunction(len(x2.basis), f.codomain_dim, tuple(cells))
    ybasis = _value_span_basis(f, x2)
    return Decomposition(x1, x2, t_matrix, g, Subspace(f.codomain_dim, tuple(ybasis)))


def _value_span_basis(f: PwlFunction, x2: Subspace) -> list[Vec]:
    basis: list[Vec] = []
    for _, m in f.cells:
        for h in x2.basis:
            v = matvec(m.matrix, h)
            if not in_span(basis, v):
                basis.append(v)
        if not in_span(basis, m.offset):
            basis.append(m.offset)
    return basis


def graph_polyhedra(f: PwlFunction) -> list[GenPolyhedron]:
    """The graph of f as a union of polyhedra in domain x codomain space."""
    p, q = f.domain_dim, f.codomain_dim
    out = []
    for cell, m in f.cells:
        rows: list[Halfspace] = [
            Halfspace(r.coeffs + (ZERO,) * q, r.bound, r.strict)
            for r in cell.rows]
        for r in range(q):
            trow = m.matrix[r] if m.matrix else (ZERO,) * p
            co = tuple(trow) + tuple(-1 if j == r else 0 for j in range(q))
            rows.extend(ph.eq_rows(vec(co), -m.offset[r]))
        out.append(GenPolyhedron(p + q, tuple(rows)))
    return out
