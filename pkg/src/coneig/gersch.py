"""Classical, scaled and block Gerschgorin disks.

Block (generalized) disks ``G_i = {l : 1/||(A_ii - l)^-1|| <= R_i}`` are
norm level sets and are never represented exactly.  They are handled
through a union of scalar outer disks plus a tri-state membership test.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DimensionMismatch, Infeasible, NonpositiveScale, NotIsolated
from .interval import (
    INF,
    CRect,
    Interval,
    Real,
    add_down,
    add_up,
    div_down,
    div_up,
    mag,
    mig,
    mul_down,
    mul_up,
    sqrt_down,
    sub_down,
    sub_up,
    sum_up,
    to_real,
)
from .linalg import IMatrix, as_imatrix, inf_norm_lower, inf_norm_upper, inv_norm_lower, inv_norm_upper

__all__ = [
    "Disk",
    "Partition",
    "Membership",
    "DiskGroup",
    "EigvecBound",
    "FirstDiskScaling",
    "classical_disks",
    "scaled_disks",
    "block_disk_outer",
    "block_disk_member",
    "group_disks",
    "wilkinson_bound",
    "standard_isolation_check",
    "generalized_isolation_check",
    "first_disk_scaling",
]


@dataclass(frozen=True)
class Disk:
    """Closed disk ``B(center, radius)``; ``radius`` is an upper bound.

    ``dim`` is the eigenvalue budget of the block the disk belongs to and
    ``block`` identifies that block when several disks enclose one block.
    """

    center: CRect
    radius: Real
    label: str = ""
    dim: int = 1
    block: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "center", CRect.coerce(self.center))
        if self.radius < 0:
            raise ValueError("disk radius must be nonnegative")
        if self.dim < 1:
            raise ValueError("disk dim must be at least 1")

    def contains(self, z, slack: float = 0.0) -> bool:
        """Non-rigorous point test used for plotting and property checks."""
        c = self.center.mid()
        return abs(complex(z) - c) <= float(self.radius) + slack

    def intersects(self, other: "Disk") -> bool:
        """Conservative: False only when disjointness is certified."""
        gap = mig(self.center - other.center)
        return not gap > add_up(self.radius, other.radius)


@dataclass(frozen=True)
class Partition:
    sizes: tuple

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        if not sizes or any(s < 1 for s in sizes):
            raise ValueError("every block size must be at least 1")
        object.__setattr__(self, "sizes", sizes)

    @classmethod
    def scalar(cls, n: int) -> "Partition":
        return cls((1,) * n)

    @property
    def n(self) -> int:
        return sum(self.sizes)

    def __len__(self):
        return len(self.sizes)

    def indices(self, i: int) -> range:
        start = sum(self.sizes[:i])
        return range(start, start + self.sizes[i])

    def check(self, n: int):
        if self.n != n:
            raise DimensionMismatch(f"partition {self.sizes} does not sum to n={n}")


class Membership(enum.Enum):
    CERTIFIED_IN = "certified_in"
    CERTIFIED_OUT = "certified_out"
    UNKNOWN = "unknown"


def _row_radius(A: IMatrix, i: int, skip: Sequence[int]) -> Real:
    return sum_up(mag(A[i, j]) for j in range(A.cols) if j not in skip)


def classical_disks(A) -> list:
    A = as_imatrix(A)
    n = A.n
    return [Disk(A[i, i], _row_radius(A, i, (i,)), f"G{i + 1}", 1, i) for i in range(n)]


def scaled_disks(A, x: Sequence) -> list:
    """Disks of ``X^-1 A X`` for ``X = diag(x)``, ``x > 0``."""
    A = as_imatrix(A)
    xs = [Interval.coerce(v) for v in x]
    if len(xs) != A.n:
        raise DimensionMismatch("scaling vector length differs from matrix size")
    if any(not v.lo > 0 for v in xs):
        raise NonpositiveScale("scaling entries must be positive")
    return classical_disks(A.scaled(xs))


def _block_R(A: IMatrix, p: Partition, i: int, upper: bool = True) -> Real:
    rows = p.indices(i)
    norm = inf_norm_upper if upper else inf_norm_lower
    total: Real = Fraction(0)
    for m in range(len(p)):
        if m == i:
            continue
        blk = A.submatrix(rows, p.indices(m))
        total = add_up(total, norm(blk)) if upper else add_down(total, norm(blk))
    return total


def block_disk_outer(A, p: Partition, i: int) -> list:
    """Scalar disks whose union contains the block disk ``G_i(A)``."""
    A = as_imatrix(A)
    p.check(A.n)
    rows = list(p.indices(i))
    R = _block_R(A, p, i)
    dim = p.sizes[i]
    out = []
    for j in rows:
        inner = sum_up(mag(A[j, l]) for l in rows if l != j)
        out.append(Disk(A[j, j], add_up(inner, R), f"G{i + 1}" if dim == 1 else f"G{i + 1}[{j + 1}]", dim, i))
    return out


def block_disk_member(A, p: Partition, i: int, lam) -> Membership:
    """Tri-state test of ``lam`` against the block disk ``G_i(A)``."""
    A = as_imatrix(A)
    p.check(A.n)
    lam = CRect.coerce(lam)
    rows = p.indices(i)
    Aii = A.submatrix(rows, rows)
    if inv_norm_lower(Aii, lam) > _block_R(A, p, i, upper=True):
        return Membership.CERTIFIED_OUT
    if inv_norm_upper(Aii, lam) <= _block_R(A, p, i, upper=False):
        return Membership.CERTIFIED_IN
    return Membership.UNKNOWN


@dataclass(frozen=True)
class DiskGroup:
    disks: tuple
    count: int
    blocks: tuple = field(default=())

    @property
    def labels(self):
        return [d.label for d in self.disks]


def group_disks(disks: Sequence[Disk]) -> list:
    """Connected components of the (conservative) disk-overlap graph.

    Disks sharing a ``block`` id are merged first; each group counts the
    dimension of every block it contains once.
    """
    disks = list(disks)
    parent = list(range(len(disks)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    first_of_block = {}
    for idx, d in enumerate(disks):
        if d.block is not None:
            if d.block in first_of_block:
                union(first_of_block[d.block], idx)
            else:
                first_of_block[d.block] = idx
    for a in range(len(disks)):
        for b in range(a + 1, len(disks)):
            if find(a) != find(b) and disks[a].intersects(disks[b]):
                union(a, b)

    comps = {}
    for idx in range(len(disks)):
        comps.setdefault(find(idx), []).append(idx)
    groups = []
    for root in sorted(comps):
        members = [disks[i] for i in comps[root]]
        seen = {}
        loose = 0
        for d in members:
            if d.block is None:
                loose += d.dim
            else:
                seen[d.block] = d.dim
        groups.append(DiskGroup(tuple(members), loose + sum(seen.values()), tuple(sorted(seen))))
    return groups


@dataclass(frozen=True)
class EigvecBound:
    """Certified eigenvector statement for an isolated block.

    Any eigenvector ``v`` of any point matrix in ``A`` whose eigenvalue lies
    in ``G_block`` satisfies ``||v_m|| <= ratio * ||v_block||`` for every
    block ``m`` of ``partition``.
    """

    block: int
    partition: Partition
    ratio: Real = Fraction(1)
    disks: tuple = ()


def _all_outer(A: IMatrix, p: Partition) -> list:
    out = []
    for i in range(len(p)):
        out.extend(block_disk_outer(A, p, i))
    return out


def wilkinson_bound(A, p: Partition, j: int) -> EigvecBound:
    A = as_imatrix(A)
    p.check(A.n)
    groups = group_disks(_all_outer(A, p))
    mine = next(g for g in groups if j in g.blocks)
    if mine.blocks != (j,):
        others = [b + 1 for b in mine.blocks if b != j]
        raise NotIsolated(f"block {j + 1} overlaps blocks {others}")
    return EigvecBound(j, p, Fraction(1), mine.disks)


def _first_row_R(A: IMatrix) -> Real:
    return _row_radius(A, 0, (0,))


def standard_isolation_check(A) -> bool:
    """``|a11 - aii| > R1 + Ri`` for all ``i >= 2`` (certified)."""
    A = as_imatrix(A)
    n = A.n
    R1 = _first_row_R(A)
    return all(mig(A[0, 0] - A[i, i]) > add_up(R1, _row_radius(A, i, (i,))) for i in range(1, n))


def generalized_isolation_check(A) -> bool:
    """``|a11 - aii| > R1 + sum_{j != 1,i} |aij| + max_{j>=2} |aj1|`` for all ``i >= 2``."""
    A = as_imatrix(A)
    n = A.n
    if n < 2:
        return True
    R1 = _first_row_R(A)
    col = max(mag(A[j, 0]) for j in range(1, n))
    ok = all(
        mig(A[0, 0] - A[i, i]) > add_up(add_up(R1, _row_radius(A, i, (0, i))), col) for i in range(1, n)
    )
    if ok:
        assert standard_isolation_check(A), "generalized isolation must imply standard isolation"
    return ok


@dataclass(frozen=True)
class FirstDiskScaling:
    """Admissible ``r`` for isolating ``G1`` of ``X^-1 A X``, ``X = diag(r, 1, ..., 1)``."""

    r_lo: Real
    r_hi: Real
    bound: Real

    def disks(self, A, r=None) -> list:
        A = as_imatrix(A)
        r = to_real(r) if r is not None else self.recommended
        return scaled_disks(A, [r] + [1] * (A.n - 1))

    @property
    def recommended(self) -> Real:
        if self.r_hi == INF:
            return max(Fraction(1), 2 * Fraction(self.r_lo))
        return (Fraction(self.r_lo) + Fraction(self.r_hi)) / 2


def first_disk_scaling(A) -> FirstDiskScaling:
    """Range of first-coordinate scalings keeping ``G1`` disjoint from the rest.

    Row ``i`` requires ``|a_i1| r^2 - (g_i - s_i) r + R1 < 0`` with
    ``g_i = |a11 - aii|`` and ``s_i = sum_{j != 1,i} |a_ij|``.  The interval
    endpoints are rounded inward; ``bound = R1 / r_hi`` is rounded up.
    """
    A = as_imatrix(A)
    n = A.n
    if n < 2:
        raise ValueError("need n >= 2")
    R1 = _first_row_R(A)
    lo: Real = Fraction(0)
    hi: Real = INF
    for i in range(1, n):
        g = sub_down(mig(A[0, 0] - A[i, i]), _row_radius(A, i, (0, i)))
        c = mag(A[i, 0])
        if not g > 0:
            raise Infeasible(f"row {i + 1}: no scaling separates G1")
        if c == 0:
            lo = max(lo, div_up(R1, g))
            continue
        disc = sub_down(mul_down(g, g), mul_up(mul_up(4, c), R1))
        if not disc > 0:
            raise Infeasible(f"row {i + 1}: no scaling separates G1")
        sq = sqrt_down(disc)
        two_c = mul_up(2, c)
        lo = max(lo, div_up(sub_up(g, sq), two_c))
        hi = min(hi, div_down(add_down(g, sq), two_c))
    if not lo < hi:
        raise Infeasible("row constraints on r do not intersect")
    bound = Fraction(0) if R1 == 0 else (div_up(R1, hi) if hi != INF else Fraction(0))
    return FirstDiskScaling(lo, hi, bound)
