"""Problem data and the finite-dimension reduction.

A problem instance fixes cells P_i with their generator rows, affine
objective pieces (T_i, b_i), scalar constraint data (x*_ij, c_ij) and an
ordering cone.  The reduction constructs

  X1   common null space of all generator and constraint functionals,
  X2   span{h_1..h_nu} with <e*_i, h_j> = delta_ij for a maximal
       independent subset {e*} of those functionals,
  Z    greedy value-space basis taken from the images of the h's and the
       offsets, transversal to the common linear image,
  C_Z  the cone seen by the reduced problem,

and re-expresses the feasible cells and the objective in (h, Z)
coordinates.  Everything downstream works in those charts and lifts back
by adding X1 (solutions) or the common image (values).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import polyhedra as ph
from . import pwl
from .linalg import (Mat, Vec, ZERO, ONE, dot, in_span, independent_subset,
                     matvec, solve, unit_vec, vadd, vec, vscale, vsub)
from .polyhedra import Cone, GenPolyhedron, Halfspace, Subspace
from .pwl import AffineMap, PwlFunction


@dataclass(frozen=True)
class PlpInstance:
    p: int
    q: int
    l: int
    cells: tuple[GenPolyhedron, ...]
    objectives: tuple[AffineMap, ...]
    constraints: tuple[tuple[tuple[Vec, Fraction], ...], ...]
    cone: Cone

    def __post_init__(self):
        m = len(self.cells)
        if len(self.objectives) != m:
            raise ValueError("one objective piece per cell required")
        if len(self.constraints) != m:
            raise ValueError("one constraint list per cell required")
        for ci in self.constraints:
            if len(ci) != self.l:
                raise ValueError("each cell needs all constraint rows")
            for xstar, _ in ci:
                if len(xstar) != self.p:
                    raise ValueError("constraint functional dimension mismatch")
        for cell in self.cells:
            if cell.dim != self.p or not cell.is_polyhedron:
                raise ValueError("cells must be polyhedra in the domain space")
        for t in self.objectives:
            if t.codomain_dim != self.q:
                raise ValueError("objective codomain mismatch")
        if self.cone.dim != self.q:
            raise ValueError("cone lives in the value space")

    @property
    def m(self) -> int:
        return len(self.cells)

    def objective_function(self) -> PwlFunction:
        return PwlFunction(self.p, self.q, tuple(zip(self.cells, self.objectives)))

    def constraint_function(self, j: int) -> PwlFunction:
        cells = []
        for i in range(self.m):
            xstar, c = self.constraints[i][j]
            cells.append((self.cells[i], AffineMap((xstar,), (-c,))))
        return PwlFunction(self.p, 1, tuple(cells))

    def feasible_cell(self, i: int) -> GenPolyhedron:
        rows = tuple(Halfspace(xstar, c) for xstar, c in self.constraints[i])
        return ph.canonicalize(GenPolyhedron(self.p, self.cells[i].rows + rows))


def validate_instance(inst: PlpInstance) -> pwl.ValidationReport:
    """Coverage/consistency of the objective and of every constraint."""
    violations: list[pwl.Violation] = []
    rep = pwl.validate(inst.objective_function())
    violations.extend(rep.violations)
    for j in range(inst.l):
        repj = pwl.validate(inst.constraint_function(j))
        for v in repj.violations:
            violations.append(pwl.Violation(
                v.kind, v.cells, f"constraint {j}: {v.detail}"))
    return pwl.ValidationReport(not violations, tuple(violations))


@dataclass(frozen=True)
class ReducedProblem:
    x1: Subspace
    e_star: tuple[Vec, ...]
    h_basis: tuple[Vec, ...]
    that: Mat                         # q x dim(X1) on X1-basis coordinates
    that_image_basis: tuple[Vec, ...]  # basis of the common image T(X1)
    z_basis: tuple[Vec, ...]
    proj_z: Mat                       # sigma x q, zero on image, identity on Z
    cone_z: Cone
    int_condition: bool               # (T(X1) (+) Z) meets int(C)
    cone_condition: bool              # C_Z equals C meet (T(X1) (+) Z)
    phat: tuple[GenPolyhedron, ...]   # cells in h-coordinates
    cells_hat: tuple[GenPolyhedron, ...]  # feasible cells in h-coordinates
    fhat: tuple[AffineMap, ...]       # objective pieces in (h, Z) coordinates

    @property
    def nu(self) -> int:
        return len(self.h_basis)

    @property
    def sigma(self) -> int:
        return len(self.z_basis)

    @property
    def dim_x1(self) -> int:
        return len(self.x1.basis)

    @property
    def feasible_indices(self) -> tuple[int, ...]:
        return tuple(i for i, a in enumerate(self.cells_hat)
                     if not ph.is_empty(a))

    def h_matrix_rows(self, p: int) -> Mat:
        """p x nu matrix with the h vectors as columns."""
        return tuple(tuple(h[k] for h in self.h_basis) for k in range(p))

    def u_matrix_rows(self, q: int) -> Mat:
        """q x sigma matrix with the Z basis as columns."""
        return tuple(tuple(u[k] for u in self.z_basis) for k in range(q))

    def lift_solution_vec(self, t: Sequence[Fraction], p: int) -> Vec:
        out = (ZERO,) * p
        for coef, h in zip(t, self.h_basis):
            out = vadd(out, vscale(coef, h))
        return out

    def reduced_coords(self, x: Sequence[Fraction]) -> Vec:
        """h-coordinates of the X2 component of x (e*-pairing)."""
        return tuple(dot(e, x) for e in self.e_star)


def instance_functionals(inst: PlpInstance) -> list[Vec]:
    """Generator and constraint functionals, per cell: u's then x*'s."""
    out: list[Vec] = []
    for i in range(inst.m):
        out.extend(r.coeffs for r in inst.cells[i].rows)
        out.extend(xstar for xstar, _ in inst.constraints[i])
    return out


def compute_x1(inst: PlpInstance) -> Subspace:
    return Subspace.from_nullspace(tuple(instance_functionals(inst)), inst.p)


def compute_x2(inst: PlpInstance) -> tuple[tuple[Vec, ...], tuple[Vec, ...]]:
    """Maximal independent functional subset e* and its dual basis h."""
    funcs = instance_functionals(inst)
    idx = independent_subset(funcs)
    e_star = tuple(funcs[i] for i in idx)
    nu = len(e_star)
    h = []
    for iota in range(nu):
        sol = solve(e_star, unit_vec(nu, iota))
        assert sol is not None  # e* rows are independent
        h.append(sol)
    return e_star, tuple(h)


def compute_that(inst: PlpInstance, x1: Subspace) -> Mat:
    """q x dim(X1) matrix of the common linear action on the X1 basis."""
    cols = [matvec(inst.objectives[0].matrix, v) for v in x1.basis]
    for t in inst.objectives[1:]:
        for v, col in zip(x1.basis, cols):
            if matvec(t.matrix, v) != col:
                raise ValueError("objective pieces disagree on X1: "
                                 "inconsistent instance")
    if not cols:
        return tuple(() for _ in range(inst.q))
    return tuple(zip(*cols))


def compute_z(inst: PlpInstance, that_cols: Sequence[Vec],
              h_basis: Sequence[Vec]) -> tuple[Vec, ...]:
    """Greedy basis u_1..u_sigma of the value subspace Z transversal to the
    common image; scan order: per piece, images of h_1..h_nu then the offset."""
    kept: list[Vec] = []
    base = list(that_cols)
    for t in inst.objectives:
        for h in h_basis:
            cand = matvec(t.matrix, h)
            if not in_span(base + kept, cand):
                kept.append(cand)
        if not in_span(base + kept, t.offset):
            kept.append(t.offset)
    return tuple(kept)


def _subspace_chart_rows(cone: Cone, w: Sequence[Vec], u: Sequence[Vec],
                         strict: bool) -> GenPolyhedron:
    """Cone rows pulled back to (a, z) coordinates of the subspace
    span(w) (+) span(u)."""
    total = len(w) + len(u)
    rows = []
    for r in cone.rep.rows:
        co = tuple(dot(r.coeffs, wk) for wk in w) + \
             tuple(dot(r.coeffs, us) for us in u)
        rows.append(Halfspace(co, ZERO, strict))
    return GenPolyhedron(total, tuple(rows))


def compute_cz(cone: Cone, w: Sequence[Vec], u: Sequence[Vec]
               ) -> tuple[Cone, bool, bool]:
    """(C_Z, int-condition, cone-condition) in the chart of span(w)+span(u).

    int-condition: the subspace meets int(C) (all rows strictly feasible).
    cone-condition: C meet subspace projects injectively into Z, i.e. its
    image-component is {0}; then C_Z literally equals the intersection.
    """
    d1, s = len(w), len(u)
    inter = _subspace_chart_rows(cone, w, u, strict=False)
    strict_sys = _subspace_chart_rows(cone, w, u, strict=True)
    int_cond = not ph.is_empty(strict_sys)
    cz = ph.project(inter, list(range(d1, d1 + s)))
    cone_z = Cone(GenPolyhedron(s, cz.rows))
    cone_cond = True
    for k in range(d1):
        for sign in (ONE, -ONE):
            obj = tuple(sign if j == k else ZERO for j in range(d1 + s))
            res = ph.supremum(inter, obj)
            if res.status is not ph.lp.LpStatus.OPTIMAL or res.value != 0:
                cone_cond = False
                break
        if not cone_cond:
            break
    return cone_z, int_cond, cone_cond


def reduce_instance(inst: PlpInstance,
                    force_trivial_x1: bool = False) -> ReducedProblem:
    """Run the reduction; with force_trivial_x1 the decomposition step is
    skipped (X1 = {0}, X2 the standard basis), which must not change any
    solution-set classification."""
    if force_trivial_x1:
        x1 = Subspace(inst.p, ())
        e_star = tuple(unit_vec(inst.p, i) for i in range(inst.p))
        h_basis = tuple(unit_vec(inst.p, i) for i in range(inst.p))
    else:
        x1 = compute_x1(inst)
        e_star, h_basis = compute_x2(inst)
    that = compute_that(inst, x1)
    that_cols = [matvec(inst.objectives[0].matrix, v) for v in x1.basis]
    z_basis = compute_z(inst, that_cols, h_basis)
    w = tuple(that_cols[i] for i in independent_subset(that_cols))
    cone_z, int_cond, cone_cond = compute_cz(inst.cone, w, z_basis)

    proj_rows = []
    chart = tuple(w) + tuple(z_basis)
    for r in range(len(z_basis)):
        rhs = tuple(ZERO for _ in w) + unit_vec(len(z_basis), r)
        g = solve(chart, rhs)
        assert g is not None  # chart vectors are independent
        proj_rows.append(g)
    proj_z = tuple(proj_rows)

    nu = len(h_basis)
    phat = []
    cells_hat = []
    fhat = []
    for i in range(inst.m):
        cell_rows = tuple(
            Halfspace(tuple(dot(r.coeffs, h) for h in h_basis), r.bound)
            for r in inst.cells[i].rows)
        phat.append(ph.canonicalize(GenPolyhedron(nu, cell_rows)))
        cons_rows = tuple(
            Halfspace(tuple(dot(xstar, h) for h in h_basis), c)
            for xstar, c in inst.constraints[i])
        cells_hat.append(ph.canonicalize(GenPolyhedron(nu, cell_rows + cons_rows)))
        t = inst.objectives[i]
        img_cols = [matvec(proj_z, matvec(t.matrix, h)) for h in h_basis]
        fmat = tuple(zip(*img_cols)) if img_cols else \
            tuple(() for _ in range(len(z_basis)))
        fhat.append(AffineMap(fmat, matvec(proj_z, t.offset)))

    red = ReducedProblem(
        x1=x1, e_star=e_star, h_basis=h_basis, that=that,
        that_image_basis=w, z_basis=z_basis, proj_z=proj_z, cone_z=cone_z,
        int_condition=int_cond, cone_condition=cone_cond,
        phat=tuple(phat), cells_hat=tuple(cells_hat), fhat=tuple(fhat))
    _check_reduction_identity(inst, red)
    return red


def _reduced_value_at(red: ReducedProblem, t: Vec) -> Vec | None:
    for cell, m in zip(red.phat, red.fhat):
        if cell.contains(t):
            return m.apply(t)
    return None


def _check_reduction_identity(inst: PlpInstance, red: ReducedProblem,
                              coeffs: Sequence[Fraction] = (Fraction(-1),
                                                            Fraction(0),
                                                            Fraction(1))
                              ) -> None:
    """f(x1+x2) - lift(fhat(x2)) must land in the common image T(X1)."""
    f = inst.objective_function()
    d1 = red.dim_x1
    nu = red.nu
    x1_samples = list(itertools.product(coeffs, repeat=d1))[:9] if d1 else [()]
    t_samples = list(itertools.product(coeffs, repeat=nu))[:27] if nu else [()]
    for a in x1_samples:
        x1v = (ZERO,) * inst.p
        for c, b in zip(a, red.x1.basis):
            x1v = vadd(x1v, vscale(c, b))
        for t in t_samples:
            x2v = red.lift_solution_vec(t, inst.p)
            x = vadd(x1v, x2v)
            lhs = pwl.evaluate(f, x)
            zt = _reduced_value_at(red, vec(t))
            if zt is None:
                raise ValueError("reduced cells do not cover the h-chart")
            lift = (ZERO,) * inst.q
            for c, u in zip(zt, red.z_basis):
                lift = vadd(lift, vscale(c, u))
            residual = vsub(lhs, lift)
            if not in_span(list(red.that_image_basis), residual):
                raise ValueError("reduction identity failed: inconsistent "
                                 "instance data")
