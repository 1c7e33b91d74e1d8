"""Exact rational linear programming (dense two-phase simplex, Bland's rule).

Problems are stated as::

    minimize    c . x
    subject to  G x <= h
                E x  = f
                x_j >= 0   for j with nonneg[j]  (all other variables free)

Everything is carried in :class:`fractions.Fraction`, so the returned
optimum and vertex are exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DimensionMismatch

__all__ = ["LPStatus", "LPProblem", "LPSolution", "solve"]


class LPStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


def _vec(v) -> tuple:
    return tuple(Fraction(x) for x in v)


def _mat(rows) -> tuple:
    return tuple(_vec(r) for r in rows)


@dataclass(frozen=True)
class LPProblem:
    objective: tuple
    G: tuple = ()
    h: tuple = ()
    E: tuple = ()
    f: tuple = ()
    nonneg: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "objective", _vec(self.objective))
        object.__setattr__(self, "G", _mat(self.G))
        object.__setattr__(self, "h", _vec(self.h))
        object.__setattr__(self, "E", _mat(self.E))
        object.__setattr__(self, "f", _vec(self.f))
        n = len(self.objective)
        if self.nonneg is None:
            object.__setattr__(self, "nonneg", (False,) * n)
        else:
            object.__setattr__(self, "nonneg", tuple(bool(b) for b in self.nonneg))
        if len(self.nonneg) != n:
            raise DimensionMismatch("nonneg flags do not match the number of variables")
        if len(self.G) != len(self.h) or len(self.E) != len(self.f):
            raise DimensionMismatch("constraint rows and right-hand sides differ in length")
        if any(len(r) != n for r in self.G + self.E):
            raise DimensionMismatch("constraint row length differs from the number of variables")

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def is_feasible(self, x: Sequence[Fraction]) -> bool:
        x = _vec(x)
        if len(x) != self.num_vars:
            return False
        if any(nn and v < 0 for nn, v in zip(self.nonneg, x)):
            return False
        if any(_dot(r, x) > b for r, b in zip(self.G, self.h)):
            return False
        return all(_dot(r, x) == b for r, b in zip(self.E, self.f))


@dataclass(frozen=True)
class LPSolution:
    status: LPStatus
    value: Optional[Fraction] = None
    point: Optional[tuple] = None
    pivots: int = field(default=0, compare=False)

    @property
    def optimal(self) -> bool:
        return self.status is LPStatus.OPTIMAL


def _dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


class _Tableau:
    """Row-reduced tableau ``T x = b`` with an explicit basis."""

    def __init__(self, rows, rhs, basis):
        self.rows = [list(r) for r in rows]
        self.rhs = list(rhs)
        self.basis = list(basis)
        self.pivots = 0

    def pivot(self, i: int, j: int):
        row = self.rows[i]
        p = row[j]
        if p != 1:
            self.rows[i] = row = [v / p for v in row]
            self.rhs[i] /= p
        nz = [c for c, v in enumerate(row) if v]
        for r, other in enumerate(self.rows):
            if r == i:
                continue
            f = other[j]
            if f:
                for c in nz:
                    other[c] -= f * row[c]
                self.rhs[r] -= f * self.rhs[i]
        self.basis[i] = j
        self.pivots += 1

    def reduced_costs(self, cost):
        z = list(cost)
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                for c, v in enumerate(self.rows[i]):
                    if v:
                        z[c] -= cb * v
        return z

    def run(self, cost, allowed) -> LPStatus:
        """Minimize ``cost`` over columns in ``allowed`` with Bland's rule."""
        z = self.reduced_costs(cost)
        while True:
            entering = next((j for j in allowed if z[j] < 0), None)
            if entering is None:
                return LPStatus.OPTIMAL
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (self.rhs[i] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return LPStatus.UNBOUNDED
            i = best[1]
            self.pivot(i, entering)
            f = z[entering]
            row = self.rows[i]
            for c, v in enumerate(row):
                if v:
                    z[c] -= f * v

    def value_of(self, ncols):
        x = [Fraction(0)] * ncols
        for i, b in enumerate(self.basis):
            x[b] = self.rhs[i]
        return x


def solve(p: LPProblem) -> LPSolution:
    """Solve ``p`` exactly; the optimal point is a basic (vertex) solution."""
    # column layout: one column per nonneg variable, a (+, -) pair per free one
    colmap = []
    ncol = 0
    for nn in p.nonneg:
        if nn:
            colmap.append((ncol, None))
            ncol += 1
        else:
            colmap.append((ncol, ncol + 1))
            ncol += 2

    def expand(row):
        out = [Fraction(0)] * ncol
        for j, v in enumerate(row):
            plus, minus = colmap[j]
            out[plus] = v
            if minus is not None:
                out[minus] = -v
        return out

    n_ineq = len(p.G)
    n_slack = n_ineq
    rows, rhs = [], []
    for i, (g, b) in enumerate(zip(p.G, p.h)):
        r = expand(g) + [Fraction(0)] * n_slack
        r[ncol + i] = Fraction(1)
        rows.append(r)
        rhs.append(b)
    for e, b in zip(p.E, p.f):
        rows.append(expand(e) + [Fraction(0)] * n_slack)
        rhs.append(b)
    m = len(rows)
    base = ncol + n_slack

    # right-hand sides made nonnegative; rows keeping a +1 slack start basic on it
    basis = [None] * m
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
        elif i < n_ineq:
            basis[i] = ncol + i
    need_art = [i for i in range(m) if basis[i] is None]
    total = base + len(need_art)
    for r in rows:
        r.extend([Fraction(0)] * len(need_art))
    for a, i in enumerate(need_art):
        rows[i][base + a] = Fraction(1)
        basis[i] = base + a

    tab = _Tableau(rows, rhs, basis)
    if need_art:
        cost1 = [Fraction(0)] * base + [Fraction(1)] * len(need_art)
        tab.run(cost1, range(total))
        if _dot(cost1, tab.value_of(total)) > 0:
            return LPSolution(LPStatus.INFEASIBLE, pivots=tab.pivots)
        # drive zero-level artificials out of the basis, dropping redundant rows
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= base:
                j = next((c for c in range(base) if tab.rows[i][c] != 0), None)
                if j is None:
                    del tab.rows[i], tab.rhs[i], tab.basis[i]
                    continue
                tab.pivot(i, j)
            i += 1

    cost2 = expand(p.objective) + [Fraction(0)] * (total - ncol)
    status = tab.run(cost2, range(base))
    if status is LPStatus.UNBOUNDED:
        return LPSolution(LPStatus.UNBOUNDED, pivots=tab.pivots)

    std = tab.value_of(total)
    x = []
    for plus, minus in colmap:
        v = std[plus]
        if minus is not None:
            v -= std[minus]
        x.append(v)
    x = tuple(x)
    value = _dot(p.objective, x)
    # self-audit: the vertex must satisfy every constraint exactly
    assert p.is_feasible(x), "simplex returned an infeasible point"
    return LPSolution(LPStatus.OPTIMAL, value, x, pivots=tab.pivots)
