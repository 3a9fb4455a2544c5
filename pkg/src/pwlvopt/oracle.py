"""Brute-force ground truth: nondominance filtering and grid classification.

`nondominated` is the plain O(n^2) pairwise filter straight from the
definitions and serves as the reference for everything else.  The grid
classifier uses an equivalent sorted sweep when the cone is a standard
orthant in dimension <= 2 (the pairwise filter is cross-checked against
it in the test suite); labels are sound one-directionally: a grid point
labeled dominated has a genuine dominator, while a grid-efficient point
may still be dominated by off-grid points.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Literal, Sequence

from . import polyhedra as ph
from . import pwl
from .linalg import Vec, dot, vec, vsub
from .polyhedra import Cone
from .reduction import PlpInstance

Label = Literal["infeasible", "pareto", "weak_only", "dominated"]


@dataclass(frozen=True)
class GridSpec:
    box: tuple[tuple[Fraction, Fraction], ...]
    denominator: int

    def __post_init__(self):
        if self.denominator < 1:
            raise ValueError("denominator must be >= 1")
        for lo, hi in self.box:
            if lo > hi:
                raise ValueError("empty box interval")

    def points(self) -> Iterator[Vec]:
        axes = []
        for lo, hi in self.box:
            start = math.ceil(lo * self.denominator)
            stop = math.floor(hi * self.denominator)
            axes.append([Fraction(k, self.denominator)
                         for k in range(start, stop + 1)])
        return (tuple(p) for p in itertools.product(*axes))


def dominates(cone: Cone, v: Sequence[Fraction], w: Sequence[Fraction],
              strict: bool = False) -> bool:
    """v <=_C w, i.e. w - v in C (in int(C) when strict)."""
    d = vsub(vec(w), vec(v))
    if strict:
        return all(dot(r.coeffs, d) < 0 for r in ph.canonicalize(cone.rep).rows)
    return cone.rep.contains(d)


def nondominated(points: Sequence[Sequence[Fraction]], cone: Cone,
                 mode: Literal["pareto", "weak"] = "pareto") -> list[Vec]:
    """Pairwise cone-membership filter; exact, reference implementation."""
    if mode == "weak" and not cone.has_nonempty_interior():
        raise ValueError("weak mode requires int(C) nonempty")
    pts = [vec(p) for p in points]
    unique = set(pts)
    out = []
    for w in pts:
        if mode == "pareto":
            dominated = any(v != w and dominates(cone, v, w) for v in unique)
        else:
            dominated = any(dominates(cone, v, w, strict=True) for v in unique)
        if not dominated:
            out.append(w)
    return out


def _is_standard_orthant(cone: Cone) -> bool:
    rows = ph.canonicalize(cone.rep).rows
    n = cone.dim
    want = {tuple(Fraction(-1) if j == i else Fraction(0) for j in range(n))
            for i in range(n)}
    return len(rows) == n and {r.coeffs for r in rows} == want \
        and all(r.bound == 0 and not r.strict for r in rows)


def _orthant_efficient_sets(values: set[Vec], dim: int
                            ) -> tuple[set[Vec], set[Vec]]:
    """(pareto, weak) nondominated subsets for the standard orthant,
    dim <= 2, via a sorted sweep."""
    if dim == 1:
        lo = min(values)
        return {lo}, {lo}
    ordered = sorted(values)
    groups = [(first, [v[1] for v in group]) for first, group in
              itertools.groupby(ordered, key=lambda v: v[0])]
    pareto: set[Vec] = set()
    weak: set[Vec] = set()
    best2 = None   # min second coordinate over groups with smaller first
    for first, seconds in groups:
        m2 = min(seconds)
        if best2 is None or m2 < best2:
            pareto.add((first, m2))
        for s in seconds:
            if best2 is None or not best2 < s:
                weak.add((first, s))
        best2 = m2 if best2 is None else min(best2, m2)
    return pareto, weak


def efficient_value_sets(values: Sequence[Vec], cone: Cone
                         ) -> tuple[set[Vec], set[Vec] | None]:
    """(pareto values, weak values or None when int(C) is empty)."""
    unique = set(vec(v) for v in values)
    if not unique:
        return set(), set()
    dim = len(next(iter(unique)))
    if _is_standard_orthant(cone) and 1 <= dim <= 2:
        pareto, weak = _orthant_efficient_sets(unique, dim)
        return pareto, weak
    pareto = set(nondominated(sorted(unique), cone, "pareto"))
    weak = None
    if cone.has_nonempty_interior():
        weak = set(nondominated(sorted(unique), cone, "weak"))
    return pareto, weak


def classify_grid(inst: PlpInstance, grid: GridSpec) -> dict[Vec, Label]:
    """Grid labels for a problem instance (ground truth relative to the grid)."""
    feasible: dict[Vec, Vec] = {}
    for x in grid.points():
        i = _containing_cell(inst, x)
        ok = all(dot(xstar, x) <= c for xstar, c in inst.constraints[i])
        if ok:
            feasible[x] = inst.objectives[i].apply(x)
    pareto_vals, weak_vals = efficient_value_sets(list(feasible.values()),
                                                  inst.cone)
    labels: dict[Vec, Label] = {}
    for x in grid.points():
        if x not in feasible:
            labels[x] = "infeasible"
            continue
        v = feasible[x]
        if v in pareto_vals:
            labels[x] = "pareto"
        elif weak_vals is not None and v in weak_vals:
            labels[x] = "weak_only"
        else:
            labels[x] = "dominated"
    return labels


def _containing_cell(inst: PlpInstance, x: Vec) -> int:
    for i, cell in enumerate(inst.cells):
        if cell.contains(x):
            return i
    raise ValueError(f"no cell contains {x}: invalid instance")


def default_box(inst: PlpInstance, margin: Fraction = Fraction(1)
                ) -> tuple[tuple[Fraction, Fraction], ...]:
    """Bounding box from the vertices of all feasible cells plus a margin;
    falls back to [-2, 2] per coordinate when no vertices exist."""
    verts: list[Vec] = []
    for i in range(inst.m):
        a = inst.feasible_cell(i)
        if ph.is_empty(a) or a.is_whole_space:
            continue
        for _, face in ph.enumerate_exposed_faces(a):
            if ph.dimension(face) == 0:
                verts.append(ph.singleton_point(face))
    if not verts:
        return tuple((Fraction(-2), Fraction(2)) for _ in range(inst.p))
    lo = [min(v[k] for v in verts) - margin for k in range(inst.p)]
    hi = [max(v[k] for v in verts) + margin for k in range(inst.p)]
    return tuple(zip(lo, hi))
