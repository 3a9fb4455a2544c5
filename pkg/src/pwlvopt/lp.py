"""Exact rational linear programming over halfspace systems.

A small dense two-phase simplex on Fraction arithmetic.  Variables are
free; rows are `Halfspace` constraints.  Mixed systems with strict rows
are decided by maximizing the minimum slack of the strict rows subject to
the non-strict ones: the system has a solution iff that optimum is
positive (the slack variable is capped at 1 so a witness point always
comes out of the same solve).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .linalg import Vec, ZERO, ONE, dot

# Pivot selection switches from Dantzig to Bland after this many pivots to
# guarantee termination on degenerate tableaus.
_BLAND_THRESHOLD = 200


class LpStatus(Enum):
    INFEASIBLE = "infeasible"
    FEASIBLE = "feasible"
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpResult:
    status: LpStatus
    point: Vec | None = None
    value: Fraction | None = None

    @property
    def is_feasible(self) -> bool:
        return self.status is not LpStatus.INFEASIBLE


class _Tableau:
    """maximize c.y subject to B y = d, y >= 0 (d >= 0 after setup)."""

    def __init__(self, body: list[list[Fraction]], rhs: list[Fraction],
                 basis: list[int]):
        self.body = body
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r: int, c: int) -> None:
        body, rhs = self.body, self.rhs
        pv = body[r][c]
        inv = ONE / pv
        body[r] = [x * inv for x in body[r]]
        rhs[r] *= inv
        prow = body[r]
        prhs = rhs[r]
        for i in range(len(body)):
            if i == r:
                continue
            f = body[i][c]
            if f != 0:
                body[i] = [x - f * y for x, y in zip(body[i], prow)]
                rhs[i] -= f * prhs
        self.basis[r] = c

    def run(self, cost: list[Fraction]) -> tuple[LpStatus, Fraction]:
        """Simplex iterations for `maximize cost.y`; returns status and value."""
        body, rhs, basis = self.body, self.rhs, self.basis
        ncols = len(cost)
        # reduced costs held explicitly
        red = list(cost)
        obj = ZERO
        for r, bc in enumerate(basis):
            f = red[bc]
            if f != 0:
                red = [x - f * y for x, y in zip(red, body[r])]
                obj += f * rhs[r]
        pivots = 0
        while True:
            if pivots < _BLAND_THRESHOLD:
                col = max(range(ncols), key=lambda j: red[j], default=None)
                if col is None or red[col] <= 0:
                    col = -1
            else:
                col = next((j for j in range(ncols) if red[j] > 0), -1)
            if col == -1:
                return LpStatus.OPTIMAL, obj
            ratio = None
            row = -1
            for i in range(len(body)):
                a = body[i][col]
                if a > 0:
                    t = rhs[i] / a
                    if ratio is None or t < ratio or (t == ratio and basis[i] < basis[row]):
                        ratio, row = t, i
            if row == -1:
                return LpStatus.UNBOUNDED, obj
            self.pivot(row, col)
            f = red[col]
            red = [x - f * y for x, y in zip(red, body[row])]
            obj += f * rhs[row]
            pivots += 1


def _simplex(a_rows: list[list[Fraction]], b: list[Fraction],
             c: list[Fraction]) -> LpResult:
    """maximize c.x subject to a_rows x <= b, x free (exact)."""
    m = len(a_rows)
    n = len(c)
    # x = u - v with u, v >= 0, plus one slack per row.
    ncols = 2 * n + m
    body: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i in range(m):
        row = [ZERO] * ncols
        for j in range(n):
            row[j] = a_rows[i][j]
            row[n + j] = -a_rows[i][j]
        row[2 * n + i] = ONE
        if b[i] < 0:
            row = [-x for x in row]
            rhs.append(-b[i])
        else:
            rhs.append(b[i])
        body.append(row)

    neg_rows = [i for i in range(m) if b[i] < 0]
    basis = [2 * n + i for i in range(m)]
    if neg_rows:
        # phase 1 with artificials on the sign-flipped rows
        nart = len(neg_rows)
        for k, i in enumerate(neg_rows):
            for r in range(m):
                body[r].append(ONE if r == i else ZERO)
            basis[i] = ncols + k
        t = _Tableau(body, rhs, basis)
        cost1 = [ZERO] * ncols + [Fraction(-1)] * nart
        status, val = t.run(cost1)
        if status is not LpStatus.OPTIMAL or val < 0:
            return LpResult(LpStatus.INFEASIBLE)
        # pivot lingering artificials out of the basis where possible
        for r in range(m):
            if t.basis[r] >= ncols:
                col = next((j for j in range(ncols) if t.body[r][j] != 0), None)
                if col is not None:
                    t.pivot(r, col)
        keep = [r for r in range(m) if t.basis[r] < ncols]
        body = [t.body[r][:ncols] for r in keep]
        rhs = [t.rhs[r] for r in keep]
        basis = [t.basis[r] for r in keep]
    t = _Tableau(body, rhs, basis)
    status, val = t.run(list(c) + [-x for x in c] + [ZERO] * (ncols - 2 * n))
    x = _extract_point(t, n, ncols)
    if status is LpStatus.UNBOUNDED:
        return LpResult(LpStatus.UNBOUNDED, point=x)
    return LpResult(LpStatus.OPTIMAL, point=x, value=val)


def _extract_point(t: _Tableau, n: int, ncols: int) -> Vec:
    y = [ZERO] * ncols
    for r, bc in enumerate(t.basis):
        if bc < ncols:
            y[bc] = t.rhs[r]
    return tuple(y[j] - y[n + j] for j in range(n))


def solve_lp(rows: Sequence, objective: Sequence[Fraction] | None = None,
             ambient_dim: int | None = None) -> LpResult:
    """Feasibility / maximization over a system of Halfspace rows.

    Without an objective: FEASIBLE with a witness point, or INFEASIBLE.
    Strict rows are honored exactly via the max-min-slack reformulation.
    With an objective: the supremum of the objective over the solution set
    (OPTIMAL's point lies in the closure; for strict-free systems it lies
    in the set itself), UNBOUNDED, or INFEASIBLE.
    """
    dims = {len(r.coeffs) for r in rows}
    if ambient_dim is not None:
        dims.add(ambient_dim)
    if objective is not None:
        dims.add(len(objective))
    if len(dims) > 1:
        raise ValueError(f"mixed ambient dimensions {sorted(dims)}")
    n = dims.pop() if dims else 0
    strict = [r for r in rows if r.strict]
    weak = [r for r in rows if not r.strict]

    if strict:
        witness = _strict_witness(strict, weak, n)
        if witness is None:
            return LpResult(LpStatus.INFEASIBLE)
        if objective is None:
            return LpResult(LpStatus.FEASIBLE, point=witness)
        res = _simplex([list(r.coeffs) for r in rows], [r.bound for r in rows],
                       list(objective))
        return res  # supremum over the (nonempty) set = max over its closure

    a = [list(r.coeffs) for r in weak]
    b = [r.bound for r in weak]
    if objective is None:
        res = _simplex(a, b, [ZERO] * n)
        if res.status is LpStatus.INFEASIBLE:
            return res
        return LpResult(LpStatus.FEASIBLE, point=res.point)
    return _simplex(a, b, list(objective))


def _strict_witness(strict, weak, n: int) -> Vec | None:
    """Point satisfying all strict rows strictly and weak rows, or None."""
    a: list[list[Fraction]] = []
    b: list[Fraction] = []
    for r in strict:
        a.append(list(r.coeffs) + [ONE])
        b.append(r.bound)
    for r in weak:
        a.append(list(r.coeffs) + [ZERO])
        b.append(r.bound)
    a.append([ZERO] * n + [ONE])  # cap the slack so a witness is returned
    b.append(ONE)
    obj = [ZERO] * n + [ONE]
    res = _simplex(a, b, obj)
    if res.status is LpStatus.INFEASIBLE:
        return None
    assert res.status is LpStatus.OPTIMAL  # slack capped, never unbounded
    if res.value <= 0:
        return None
    return res.point[:n]


def maximize(rows: Sequence, objective: Sequence[Fraction]) -> LpResult:
    return solve_lp(rows, objective)


def feasible_point(rows: Sequence, ambient_dim: int | None = None) -> Vec | None:
    res = solve_lp(rows, ambient_dim=ambient_dim)
    return res.point if res.is_feasible else None
