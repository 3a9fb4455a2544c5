"""Exact polyhedral computation over rational vector spaces.

Sets are intersections of rational halfspaces (H-representation); the
generalized form allows strict rows.  A polyhedron is the strict-free
special case class-wise; there is a single immutable type and every
operation is a pure function.  All emptiness, dimension, face and
inclusion questions reduce to exact rational LPs.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from . import lp
from .linalg import (Vec, ZERO, ONE, dot, frac, in_span, independent_subset,
                     is_zero_vec, nullspace, rank, unit_vec, vec, vsub, vadd,
                     vscale)


@dataclass(frozen=True)
class Halfspace:
    """One row <coeffs, x> <= bound (or < bound when strict)."""
    coeffs: Vec
    bound: Fraction
    strict: bool = False

    def __post_init__(self):
        object.__setattr__(self, "coeffs", vec(self.coeffs))
        object.__setattr__(self, "bound", frac(self.bound))

    def holds_at(self, x: Sequence[Fraction]) -> bool:
        v = dot(self.coeffs, x)
        return v < self.bound if self.strict else v <= self.bound

    def negated(self) -> "Halfspace":
        """Complement row: not(a.x <= b) is -a.x < -b, not(a.x < b) is -a.x <= -b."""
        return Halfspace(vscale(Fraction(-1), self.coeffs), -self.bound,
                         not self.strict)

    def as_strict(self) -> "Halfspace":
        return self if self.strict else Halfspace(self.coeffs, self.bound, True)

    def as_nonstrict(self) -> "Halfspace":
        return Halfspace(self.coeffs, self.bound, False) if self.strict else self

    def scaled_canonical(self) -> "Halfspace":
        """Scale by a positive rational so entries are coprime integers."""
        nums = [c.numerator for c in self.coeffs] + [self.bound.numerator]
        dens = [c.denominator for c in self.coeffs] + [self.bound.denominator]
        lcm = 1
        for d in dens:
            lcm = lcm * d // gcd(lcm, d)
        ints = [n * (lcm // d) for n, d in zip(nums, dens)]
        g = 0
        for x in ints:
            g = gcd(g, abs(x))
        if g > 1:
            ints = [x // g for x in ints]
        return Halfspace(tuple(Fraction(x) for x in ints[:-1]),
                         Fraction(ints[-1]), self.strict)


def row(coeffs: Iterable, bound, strict: bool = False) -> Halfspace:
    return Halfspace(vec(coeffs), frac(bound), strict)


def eq_rows(coeffs: Iterable, bound) -> tuple[Halfspace, Halfspace]:
    """<a,x> = b encoded as the pair of opposite non-strict rows."""
    a = vec(coeffs)
    b = frac(bound)
    return (Halfspace(a, b), Halfspace(vscale(Fraction(-1), a), -b))


@dataclass(frozen=True)
class GenPolyhedron:
    """Intersection of finitely many (possibly strict) halfspaces.

    An empty row list is the whole space.  `dim` is the ambient dimension.
    """
    dim: int
    rows: tuple[Halfspace, ...]

    def __post_init__(self):
        for r in self.rows:
            if len(r.coeffs) != self.dim:
                raise ValueError(
                    f"row dimension {len(r.coeffs)} != ambient {self.dim}")

    @property
    def is_polyhedron(self) -> bool:
        return all(not r.strict for r in self.rows)

    @property
    def is_whole_space(self) -> bool:
        return not self.rows

    def contains(self, x: Sequence[Fraction]) -> bool:
        if len(x) != self.dim:
            raise ValueError("point dimension mismatch")
        return all(r.holds_at(x) for r in self.rows)

    def with_rows(self, rows: Iterable[Halfspace]) -> "GenPolyhedron":
        return GenPolyhedron(self.dim, tuple(rows))

    def closure(self) -> "GenPolyhedron":
        """Relax strict rows; equals the topological closure when nonempty."""
        return GenPolyhedron(self.dim, tuple(r.as_nonstrict() for r in self.rows))


def whole_space(dim: int) -> GenPolyhedron:
    return GenPolyhedron(dim, ())


def polyhedron(dim: int, rows: Iterable[Halfspace]) -> GenPolyhedron:
    gp = GenPolyhedron(dim, tuple(rows))
    if not gp.is_polyhedron:
        raise ValueError("strict rows are not allowed in a plain polyhedron")
    return gp


def canonicalize(p: GenPolyhedron) -> GenPolyhedron:
    """Scale rows to coprime-integer form, merge duplicates, drop trivial rows.

    Rows with a zero functional are removed when trivially true; a trivially
    false zero row collapses the system to the canonical empty marker.
    First-occurrence order of the surviving functionals is preserved.
    """
    order: list[Vec] = []
    best: dict[Vec, Halfspace] = {}
    for r in (r.scaled_canonical() for r in p.rows):
        if is_zero_vec(r.coeffs):
            ok = (r.bound > 0) if r.strict else (r.bound >= 0)
            if ok:
                continue
            return GenPolyhedron(p.dim, (Halfspace(vec([0] * p.dim), Fraction(-1)),))
        key = r.coeffs
        cur = best.get(key)
        if cur is None:
            best[key] = r
            order.append(key)
        else:
            # conjunction of two bounds on the same functional
            if r.bound < cur.bound or (r.bound == cur.bound and r.strict):
                best[key] = r
    return GenPolyhedron(p.dim, tuple(best[k] for k in order))


@lru_cache(maxsize=200000)
def _feasible_cached(p: GenPolyhedron) -> Vec | None:
    return lp.feasible_point(p.rows, ambient_dim=p.dim)


def feasible_point(p: GenPolyhedron) -> Vec | None:
    """A rational point of the set, or None when empty."""
    return _feasible_cached(canonicalize(p))


def is_empty(p: GenPolyhedron) -> bool:
    return feasible_point(p) is None


@lru_cache(maxsize=200000)
def _sup_cached(p: GenPolyhedron, objective: Vec) -> lp.LpResult:
    return lp.solve_lp(p.rows, objective, ambient_dim=p.dim)


def supremum(p: GenPolyhedron, objective: Sequence[Fraction]) -> lp.LpResult:
    """sup of <objective, x> over the set (INFEASIBLE / OPTIMAL / UNBOUNDED)."""
    return _sup_cached(canonicalize(p), vec(objective))


def lp_feasible_optimal(rows: Sequence[Halfspace],
                        objective: Sequence[Fraction] | None = None) -> lp.LpResult:
    """Exact LP front door: feasibility or maximization over mixed rows."""
    return lp.solve_lp(rows, objective)


def intersect(p: GenPolyhedron, q: GenPolyhedron) -> GenPolyhedron:
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch {p.dim} vs {q.dim}")
    return canonicalize(GenPolyhedron(p.dim, p.rows + q.rows))


def intersect_many(ps: Sequence[GenPolyhedron]) -> GenPolyhedron:
    if not ps:
        raise ValueError("empty intersection list")
    out = ps[0]
    for q in ps[1:]:
        out = intersect(out, q)
    return out


def add_rows(p: GenPolyhedron, rows: Iterable[Halfspace]) -> GenPolyhedron:
    return canonicalize(GenPolyhedron(p.dim, p.rows + tuple(rows)))


def _implicit_equalities(p: GenPolyhedron) -> tuple[int, ...]:
    """Indices of rows tight on all of p (p nonempty, rows non-strict)."""
    out = []
    for i, r in enumerate(p.rows):
        res = supremum(p, vscale(Fraction(-1), r.coeffs))
        if res.status is lp.LpStatus.OPTIMAL and -res.value == r.bound:
            out.append(i)
    return tuple(out)


def affine_hull_and_dim(p: GenPolyhedron) -> tuple[tuple[int, ...], int]:
    """Implicit-equality row indices and the affine dimension of p.

    p must be a nonempty polyhedron.
    """
    if not p.is_polyhedron:
        raise ValueError("affine hull is defined for plain polyhedra")
    if is_empty(p):
        raise ValueError("affine hull of the empty set")
    tight = _implicit_equalities(p)
    functionals = tuple(p.rows[i].coeffs for i in tight)
    return tight, p.dim - rank(functionals)


def dimension(p: GenPolyhedron) -> int:
    """Affine dimension; -1 for the empty set."""
    if is_empty(p):
        return -1
    cl = p.closure()
    # dim of a nonempty generalized polyhedron equals dim of its closure
    return affine_hull_and_dim(cl)[1]


def relative_interior(p: GenPolyhedron) -> GenPolyhedron:
    """rint(p): implicit equalities stay as equality pairs, others go strict."""
    if not p.is_polyhedron:
        raise ValueError("relative interior expects a plain polyhedron")
    if is_empty(p):
        raise ValueError("relative interior of the empty set")
    tight = set(_implicit_equalities(p))
    out: list[Halfspace] = []
    for i, r in enumerate(p.rows):
        if i in tight:
            out.extend(eq_rows(r.coeffs, r.bound))
        else:
            out.append(r.as_strict())
    return GenPolyhedron(p.dim, tuple(out))


def interior(p: GenPolyhedron) -> GenPolyhedron:
    """Topological interior: every row strict."""
    return GenPolyhedron(p.dim, tuple(r.as_strict() for r in p.rows))


def prime_generator_group(p: GenPolyhedron) -> GenPolyhedron:
    """Irredundant row system describing the same set.

    Greedy first-to-last removal; a row is redundant iff its functional's
    maximum over the remaining rows does not exceed its bound.  The whole
    space carries no generator system and is rejected, as is the empty set.
    """
    if not p.is_polyhedron:
        raise ValueError("prime generator groups are defined for polyhedra")
    q = canonicalize(p)
    if q.is_whole_space:
        raise ValueError("the whole space has no prime generator group")
    if is_empty(q):
        raise ValueError("empty polyhedron has no prime generator group")
    rows = list(q.rows)
    i = 0
    while i < len(rows):
        others = rows[:i] + rows[i + 1:]
        if not others:
            break
        res = lp.solve_lp(others, rows[i].coeffs)
        if res.status is lp.LpStatus.OPTIMAL and res.value <= rows[i].bound:
            rows.pop(i)
        else:
            i += 1
    return GenPolyhedron(p.dim, tuple(rows))


def remove_redundant_rows(p: GenPolyhedron) -> GenPolyhedron:
    """Irredundancy pass that also accepts strict rows (row i is dropped when
    the others together with its negation are infeasible)."""
    q = canonicalize(p)
    rows = list(q.rows)
    i = 0
    while i < len(rows):
        others = rows[:i] + rows[i + 1:]
        test = GenPolyhedron(q.dim, tuple(others) + (rows[i].negated(),))
        if is_empty(test):
            rows.pop(i)
        else:
            i += 1
    return GenPolyhedron(q.dim, tuple(rows))


def recession_and_lineality(p: GenPolyhedron) -> tuple["Cone", "Subspace"]:
    if is_empty(p):
        raise ValueError("recession cone of the empty set")
    rec_rows = tuple(Halfspace(r.coeffs, ZERO) for r in p.rows)
    rec = Cone(GenPolyhedron(p.dim, rec_rows))
    lin = Subspace.from_nullspace(tuple(r.coeffs for r in p.rows), p.dim)
    return rec, lin


# ---------------------------------------------------------------------------
# projection / set algebra


def _eliminate_coord(rows: Sequence[Halfspace], k: int) -> list[Halfspace]:
    """Fourier-Motzkin step removing coordinate k (column stays, zeroed)."""
    uppers, lowers, keep = [], [], []
    for r in rows:
        a = r.coeffs[k]
        if a > 0:
            uppers.append(r)
        elif a < 0:
            lowers.append(r)
        else:
            keep.append(r)
    out = list(keep)
    for u in uppers:
        for l in lowers:
            cu = -l.coeffs[k]
            clw = u.coeffs[k]
            coeffs = vadd(vscale(cu, u.coeffs), vscale(clw, l.coeffs))
            bound = cu * u.bound + clw * l.bound
            out.append(Halfspace(coeffs, bound, u.strict or l.strict))
    return out


_FM_PRUNE_THRESHOLD = 24


def project(p: GenPolyhedron, keep: Sequence[int]) -> GenPolyhedron:
    """Image under the coordinate projection onto the `keep` coordinates.

    Output lives in len(keep)-dimensional space with coordinates in the
    given order.  A combined row is strict iff either parent is strict.
    """
    keep = list(keep)
    if len(set(keep)) != len(keep) or any(k < 0 or k >= p.dim for k in keep):
        raise ValueError("keep must be distinct valid coordinates")
    drop = [k for k in range(p.dim) if k not in keep]
    rows = list(canonicalize(p).rows)
    for k in drop:
        rows = _eliminate_coord(rows, k)
        gp = canonicalize(GenPolyhedron(p.dim, tuple(rows)))
        if len(gp.rows) > _FM_PRUNE_THRESHOLD:
            gp = remove_redundant_rows(gp)
        rows = list(gp.rows)
    out_rows = [Halfspace(tuple(r.coeffs[k] for k in keep), r.bound, r.strict)
                for r in rows]
    return canonicalize(GenPolyhedron(len(keep), tuple(out_rows)))


def affine_image(p: GenPolyhedron, matrix: Sequence[Vec],
                 offset: Sequence[Fraction] | None = None) -> GenPolyhedron:
    """{M x + c : x in p} via lifting to (x, y) space and projecting to y."""
    m = len(matrix)
    if offset is None:
        offset = (ZERO,) * m
    lifted: list[Halfspace] = []
    for r in p.rows:
        lifted.append(Halfspace(r.coeffs + (ZERO,) * m, r.bound, r.strict))
    for i in range(m):
        # y_i = <matrix_i, x> + offset_i as an equality pair
        co = tuple(matrix[i]) + tuple(-ONE if j == i else ZERO for j in range(m))
        lifted.extend(eq_rows(co, -offset[i]))
    big = GenPolyhedron(p.dim + m, tuple(lifted))
    return project(big, list(range(p.dim, p.dim + m)))


def affine_preimage(q: GenPolyhedron, matrix: Sequence[Vec],
                    offset: Sequence[Fraction] | None = None,
                    domain_dim: int | None = None) -> GenPolyhedron:
    """{x : M x + c in q} by direct row substitution."""
    n = len(matrix[0]) if matrix else domain_dim
    if n is None:
        raise ValueError("domain_dim required for empty matrix")
    m = len(matrix)
    if offset is None:
        offset = (ZERO,) * m
    out = []
    for r in q.rows:
        coeffs = tuple(
            sum((r.coeffs[i] * matrix[i][j] for i in range(m)), ZERO)
            for j in range(n))
        shift = dot(r.coeffs, offset)
        out.append(Halfspace(coeffs, r.bound - shift, r.strict))
    return canonicalize(GenPolyhedron(n, tuple(out)))


def minkowski_sum(p: GenPolyhedron, q: GenPolyhedron) -> GenPolyhedron:
    """{a + b : a in p, b in q} via lifting and projection; inputs nonempty."""
    if p.dim != q.dim:
        raise ValueError("dimension mismatch")
    if is_empty(p) or is_empty(q):
        raise ValueError("Minkowski sum of an empty operand")
    n = p.dim
    # variables (z, y): z = x + y with x in p, y in q  ->  x = z - y
    rows: list[Halfspace] = []
    for r in p.rows:
        rows.append(Halfspace(r.coeffs + vscale(Fraction(-1), r.coeffs),
                              r.bound, r.strict))
    for r in q.rows:
        rows.append(Halfspace((ZERO,) * n + r.coeffs, r.bound, r.strict))
    lifted = GenPolyhedron(2 * n, tuple(rows))
    return project(lifted, list(range(n)))


@dataclass(frozen=True)
class Subspace:
    """Linear subspace given by an independent basis (possibly empty = {0})."""
    dim: int
    basis: tuple[Vec, ...]

    def __post_init__(self):
        for b in self.basis:
            if len(b) != self.dim:
                raise ValueError("basis vector dimension mismatch")
        if rank(self.basis) != len(self.basis):
            raise ValueError("basis vectors are dependent")

    @property
    def space_dim(self) -> int:
        return len(self.basis)

    @staticmethod
    def from_spanning(vectors: Sequence[Vec], dim: int) -> "Subspace":
        idx = independent_subset(tuple(vectors))
        return Subspace(dim, tuple(vectors[i] for i in idx))

    @staticmethod
    def from_nullspace(functionals: Sequence[Vec], dim: int) -> "Subspace":
        return Subspace(dim, tuple(nullspace(tuple(functionals), ncols=dim)))

    def contains(self, v: Vec) -> bool:
        return in_span(self.basis, v)

    def annihilates(self, functional: Vec) -> bool:
        return all(dot(functional, b) == 0 for b in self.basis)


def decompose_along(p: GenPolyhedron, z1: Subspace, z2: Subspace) -> GenPolyhedron:
    """P = Z1 + P_hat with P_hat in Z2-coordinates (basis order of z2).

    Requires Z1 inside the null space of every row functional and
    Z1 (+) Z2 = ambient space.
    """
    for r in p.rows:
        if not z1.annihilates(r.coeffs):
            raise ValueError("Z1 is not annihilated by every row functional")
    stacked = z1.basis + z2.basis
    if len(stacked) != p.dim or rank(stacked) != p.dim:
        raise ValueError("Z1 and Z2 do not form a direct sum of the space")
    out = []
    for r in p.rows:
        coeffs = tuple(dot(r.coeffs, b) for b in z2.basis)
        out.append(Halfspace(coeffs, r.bound, r.strict))
    return canonicalize(GenPolyhedron(len(z2.basis), tuple(out)))


def subspace_sum(s: Subspace, p: GenPolyhedron) -> GenPolyhedron:
    """{v + x : v in S, x in p}: FM elimination along a basis of S."""
    if s.dim != p.dim:
        raise ValueError("dimension mismatch")
    if not s.basis:
        return canonicalize(p)
    n = p.dim
    k = len(s.basis)
    # z = v + x, v = sum t_j b_j: rows of p at x = z - B t
    rows = []
    for r in p.rows:
        tail = tuple(-dot(r.coeffs, b) for b in s.basis)
        rows.append(Halfspace(r.coeffs + tail, r.bound, r.strict))
    lifted = GenPolyhedron(n + k, tuple(rows))
    return project(lifted, list(range(n)))


# ---------------------------------------------------------------------------
# faces


@dataclass(frozen=True)
class FaceCertificate:
    """Active-row indices (into the parent's prime generator group) whose
    equality version carves the face out of the parent."""
    active_rows: frozenset[int] = field(default_factory=frozenset)


def face_of(p: GenPolyhedron, active: Iterable[int]) -> GenPolyhedron:
    """Subset of p with the given rows forced to equality."""
    act = set(active)
    out: list[Halfspace] = []
    for i, r in enumerate(p.rows):
        if i in act:
            out.extend(eq_rows(r.coeffs, r.bound))
        else:
            out.append(r)
    return GenPolyhedron(p.dim, tuple(out))


def _tight_signature(p: GenPolyhedron, active: frozenset[int]) -> frozenset[int] | None:
    """Maximal active set of face_of(p, active); None when the face is empty."""
    f = face_of(p, active)
    if is_empty(f):
        return None
    sig = set(active)
    for i, r in enumerate(p.rows):
        if i in sig:
            continue
        res = supremum(f, vscale(Fraction(-1), r.coeffs))
        if res.status is lp.LpStatus.OPTIMAL and -res.value == r.bound:
            sig.add(i)
    return frozenset(sig)


def enumerate_exposed_faces(p: GenPolyhedron, assume_prime: bool = False
                            ) -> list[tuple[FaceCertificate, GenPolyhedron]]:
    """All exposed faces of a polyhedron (p itself included), each once.

    p is put in prime generator form first (certificates index its rows);
    faces are found by breadth-first closure of active-row sets and
    deduplicated by their maximal (implicit equality) signature.  Ordering
    is deterministic: by signature size then sorted signature.
    """
    pg = p if assume_prime else prime_generator_group(p)
    n = len(pg.rows)
    found: dict[frozenset[int], GenPolyhedron] = {}
    seen: set[frozenset[int]] = set()
    empty_sets: list[frozenset[int]] = []
    queue: list[frozenset[int]] = [frozenset()]
    seen.add(frozenset())
    while queue:
        active = queue.pop(0)
        if any(e <= active for e in empty_sets):
            continue
        sig = _tight_signature(pg, active)
        if sig is None:
            empty_sets.append(active)
            continue
        if sig not in found:
            found[sig] = canonicalize(face_of(pg, sig))
        for j in range(n):
            if j not in sig:
                child = sig | {j}
                if child not in seen:
                    seen.add(child)
                    queue.append(child)
    ordered = sorted(found, key=lambda s: (len(s), sorted(s)))
    return [(FaceCertificate(s), found[s]) for s in ordered]


def smallest_face_containing(p: GenPolyhedron, q: GenPolyhedron) -> FaceCertificate:
    """Certificate of the smallest face of p (prime form) containing q.

    q must be a nonempty subset of p; the face is carved by the rows of p
    that are tight on all of q.
    """
    if is_empty(q):
        raise ValueError("cannot place the empty set in a face")
    sig = set()
    for i, r in enumerate(p.rows):
        res = supremum(q, vscale(Fraction(-1), r.coeffs))
        # q is inside p, so <r, x> <= bound holds on q; tight iff inf == bound
        if res.status is lp.LpStatus.OPTIMAL and -res.value == r.bound:
            sig.add(i)
    return FaceCertificate(frozenset(sig))


def relative_interior_samples(p: GenPolyhedron, count: int = 3) -> list[Vec]:
    """Up to `count` distinct points of rint(p); p a nonempty polyhedron.

    One point comes from the LP witness; the others walk from it along
    affine-hull directions with an exact half-of-max step.
    """
    ri = relative_interior(p)
    x0 = feasible_point(ri)
    if x0 is None:
        raise ValueError("relative interior is empty (inconsistent input)")
    pts = [x0]
    tight, dim_p = affine_hull_and_dim(p)
    if dim_p == 0:
        return pts
    dirs = nullspace(tuple(p.rows[i].coeffs for i in tight), ncols=p.dim)
    for d in dirs:
        for sign in (ONE, -ONE):
            if len(pts) >= count:
                return pts
            dd = vscale(sign, d)
            limit = None
            for r in ri.rows:
                ad = dot(r.coeffs, dd)
                if ad > 0:
                    t = (r.bound - dot(r.coeffs, x0)) / ad
                    limit = t if limit is None else min(limit, t)
            step = ONE if limit is None else limit / 2
            if step > 0:
                cand = vadd(x0, vscale(step, dd))
                if cand not in pts and ri.contains(cand):
                    pts.append(cand)
    return pts


def is_singleton(p: GenPolyhedron) -> bool:
    if is_empty(p):
        return False
    return dimension(p) == 0


def singleton_point(p: GenPolyhedron) -> Vec:
    """The unique point of a singleton set."""
    pt = feasible_point(p)
    if pt is None or not is_singleton(p):
        raise ValueError("set is not a singleton")
    return pt


# ---------------------------------------------------------------------------
# inclusion, equality, complements, refinement


def contains_set(p: GenPolyhedron, q: GenPolyhedron) -> bool:
    """q subset of p, exactly: q must violate no row of p."""
    if p.dim != q.dim:
        raise ValueError("dimension mismatch")
    if is_empty(q):
        return True
    for r in p.rows:
        if not is_empty(GenPolyhedron(q.dim, q.rows + (r.negated(),))):
            return False
    return True


def set_equal(p: GenPolyhedron, q: GenPolyhedron) -> bool:
    return contains_set(p, q) and contains_set(q, p)


def union_contains_point(pieces: Sequence[GenPolyhedron],
                         x: Sequence[Fraction]) -> bool:
    return any(pc.contains(x) for pc in pieces)


def subtract(pieces: Sequence[GenPolyhedron], hole: GenPolyhedron,
             nested: bool = True) -> list[GenPolyhedron]:
    """Pieces covering (union of pieces) minus hole, empties pruned.

    With `nested` the complement of the hole is decomposed with the
    lambda-prefix scheme (row k negated, rows < k kept), which keeps the
    output pieces pairwise disjoint relative to each input piece; otherwise
    plain one-row negations are used.
    """
    hole = canonicalize(hole)
    if hole.is_whole_space:
        return []
    out: list[GenPolyhedron] = []
    for piece in pieces:
        prefix: list[Halfspace] = []
        for r in hole.rows:
            cand = GenPolyhedron(piece.dim,
                                 piece.rows + tuple(prefix) + (r.negated(),))
            cand = canonicalize(cand)
            if not is_empty(cand):
                out.append(cand)
            if nested:
                prefix.append(r)
    return out


def subtract_union(pieces: Sequence[GenPolyhedron],
                   holes: Sequence[GenPolyhedron],
                   nested: bool = True) -> list[GenPolyhedron]:
    """(union of pieces) minus (union of holes) as explicit pieces."""
    out = list(pieces)
    for h in holes:
        out = subtract(out, h, nested=nested)
    return out


def complement_pieces(p: GenPolyhedron, nested: bool = True) -> list[GenPolyhedron]:
    """Whole space minus p."""
    return subtract([whole_space(p.dim)], p, nested=nested)


def has_nonempty_interior(p: GenPolyhedron) -> bool:
    return not is_empty(interior(p))


def refine_partition(cells: Sequence[GenPolyhedron]) -> list[GenPolyhedron]:
    """Interior-disjoint full-dimensional cover of the same union.

    Inductive construction: each incoming cell is cut against the
    lambda-prefix complement decomposition of every cell already kept, and
    only pieces with nonempty interior survive.
    """
    for c in cells:
        if not c.is_polyhedron:
            raise ValueError("refine_partition expects plain polyhedra")
        if not has_nonempty_interior(c):
            raise ValueError("refine_partition requires full-dimensional cells")
    kept: list[GenPolyhedron] = []
    for cell in cells:
        pieces = [canonicalize(cell)]
        for h in kept:
            nxt: list[GenPolyhedron] = []
            for piece in pieces:
                prefix: list[Halfspace] = []
                for r in h.rows:
                    cand = canonicalize(GenPolyhedron(
                        piece.dim,
                        piece.rows + tuple(prefix) + (r.negated().as_nonstrict(),)))
                    if has_nonempty_interior(cand):
                        nxt.append(cand)
                    prefix.append(r)
            pieces = nxt
            if not pieces:
                break
        kept.extend(pieces)
    return kept


def refine_partition_tagged(
        cells: Sequence[tuple[GenPolyhedron, object]]
) -> list[tuple[GenPolyhedron, object]]:
    """refine_partition with a carried tag per input cell (piece inherits the
    tag of the cell it was cut from)."""
    kept: list[tuple[GenPolyhedron, object]] = []
    for cell, tag in cells:
        if not has_nonempty_interior(cell):
            raise ValueError("refine_partition requires full-dimensional cells")
        pieces = [canonicalize(cell)]
        for h, _ in kept:
            nxt = []
            for piece in pieces:
                prefix: list[Halfspace] = []
                for r in h.rows:
                    cand = canonicalize(GenPolyhedron(
                        piece.dim,
                        piece.rows + tuple(prefix) + (r.negated().as_nonstrict(),)))
                    if has_nonempty_interior(cand):
                        nxt.append(cand)
                    prefix.append(r)
            pieces = nxt
            if not pieces:
                break
        kept.extend((pc, tag) for pc in pieces)
    return kept


# ---------------------------------------------------------------------------
# cones


@dataclass(frozen=True)
class Cone:
    """Polyhedral cone: all bounds zero, all rows non-strict."""
    rep: GenPolyhedron

    def __post_init__(self):
        for r in self.rep.rows:
            if r.strict or r.bound != 0:
                raise ValueError("cone rows must be homogeneous and non-strict")

    @property
    def dim(self) -> int:
        return self.rep.dim

    def contains(self, v: Sequence[Fraction]) -> bool:
        return self.rep.contains(v)

    def contains_interior(self, v: Sequence[Fraction]) -> bool:
        """Membership in int(C); meaningful when the cone is full-dimensional."""
        return all(dot(r.coeffs, v) < 0 for r in self.rep.rows)

    def interior(self) -> GenPolyhedron:
        return interior(self.rep)

    def has_nonempty_interior(self) -> bool:
        return has_nonempty_interior(self.rep)


def cone_from_rows(dim: int, functionals: Sequence[Vec]) -> Cone:
    return Cone(GenPolyhedron(dim, tuple(Halfspace(vec(f), ZERO)
                                         for f in functionals)))


def orthant_cone(dim: int) -> Cone:
    """Q^dim_+ as {x : -x_i <= 0}."""
    return cone_from_rows(dim, tuple(
        tuple(-ONE if j == i else ZERO for j in range(dim)) for i in range(dim)))
