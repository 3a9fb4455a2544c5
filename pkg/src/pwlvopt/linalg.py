"""Exact linear algebra over rational vectors and matrices.

Vectors are tuples of Fraction, matrices are tuples of row tuples.  All
routines are pure and deterministic; pivoting is first-nonzero so that
basis choices are reproducible.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    """Coerce ints/strings/Fractions to Fraction (floats are rejected)."""
    if isinstance(x, float):
        raise TypeError("floating point input is not allowed in the exact kernel")
    return Fraction(x)


def vec(xs: Iterable) -> Vec:
    return tuple(frac(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Mat:
    m = tuple(vec(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    return m


def zero_vec(n: int) -> Vec:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vec:
    return tuple(ONE if j == i else ZERO for j in range(n))


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return sum((x * y for x, y in zip(a, b)), ZERO)


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c: Fraction, a: Vec) -> Vec:
    return tuple(c * x for x in a)


def is_zero_vec(a: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in a)


def matvec(m: Mat, x: Sequence[Fraction]) -> Vec:
    return tuple(dot(row, x) for row in m)


def matmul(a: Mat, b: Mat) -> Mat:
    if a and b and len(a[0]) != len(b):
        raise ValueError("matmul shape mismatch")
    bt = transpose(b)
    return tuple(tuple(dot(ra, cb) for cb in bt) for ra in a)


def transpose(m: Mat) -> Mat:
    if not m:
        return ()
    return tuple(zip(*m))


def identity(n: int) -> Mat:
    return tuple(unit_vec(n, i) for i in range(n))


def rref(m: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form; returns (R, pivot column indices)."""
    rows = [list(r) for r in m]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        pivot = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in rows), tuple(pivots)


def rank(m: Mat) -> int:
    return len(rref(m)[1])


def nullspace(m: Mat, ncols: int | None = None) -> list[Vec]:
    """Basis of {x : m x = 0}; one vector per free column, free var set to 1.

    `ncols` must be given when m has no rows.
    """
    if not m:
        if ncols is None:
            raise ValueError("ncols required for empty matrix")
        return [unit_vec(ncols, i) for i in range(ncols)]
    n = len(m[0])
    red, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = [ZERO] * n
        v[free] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][free]
        basis.append(tuple(v))
    return basis


def solve(m: Mat, b: Sequence[Fraction]) -> Vec | None:
    """One solution of m x = b with free variables set to 0, or None."""
    if len(m) != len(b):
        raise ValueError("rhs length mismatch")
    if not m:
        return ()
    n = len(m[0])
    aug = tuple(tuple(row) + (bi,) for row, bi in zip(m, b))
    red, pivots = rref(aug)
    if n in pivots:  # pivot in the rhs column: inconsistent
        return None
    x = [ZERO] * n
    for r, pc in enumerate(pivots):
        x[pc] = red[r][n]
    return tuple(x)


def in_span(basis: Sequence[Vec], v: Vec) -> bool:
    """Whether v lies in the span of `basis` (column-wise solve)."""
    if is_zero_vec(v):
        return True
    if not basis:
        return False
    cols = transpose(tuple(basis))
    return solve(cols, v) is not None


def independent_subset(vectors: Sequence[Vec]) -> list[int]:
    """Indices of a maximal independent subset, scanning in given order."""
    kept: list[int] = []
    kept_vecs: list[Vec] = []
    for i, v in enumerate(vectors):
        if not in_span(kept_vecs, v):
            kept.append(i)
            kept_vecs.append(v)
    return kept


def coords_in_basis(basis: Sequence[Vec], v: Vec) -> Vec | None:
    """Coefficients t with sum t_i basis_i = v, or None if v not in span."""
    if not basis:
        return () if is_zero_vec(v) else None
    return solve(transpose(tuple(basis)), v)


def left_inverse(cols: Sequence[Vec]) -> Mat:
    """K with K @ M = I for M the matrix whose columns are `cols`.

    Requires independent columns; free entries are set to 0 so the rows are
    the deterministic minimum-support solutions.
    """
    k = len(cols)
    if k == 0:
        return ()
    system = tuple(cols)  # k x ambient: row j is col_j, so system @ r_i = e_i
    rows = []
    for i in range(k):
        sol = solve(system, unit_vec(k, i))
        if sol is None:
            raise ValueError("columns are linearly dependent")
        rows.append(sol)
    return tuple(rows)
