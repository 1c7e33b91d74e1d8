"""Certified eigenvalue localization built on cone domination.

Every routine here returns bounds that hold for every point matrix inside
the (interval) input.  Only :func:`approx_eigs` is non-rigorous.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .cones import compose, is_dominating
from .errors import (
    DimensionMismatch,
    HypothesisFailed,
    Infeasible,
    NoConvergence,
    NotDominatingFactor,
    NotIsolated,
)
from .gersch import Disk, standard_isolation_check
from .interval import (
    INF,
    CRect,
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
from .linalg import IMatrix, as_imatrix, imatrix_mul, inf_norm_upper, inv_norm_lower

__all__ = [
    "RParams",
    "FeasibleR",
    "LocalizationReport",
    "GerschDomReport",
    "feasible_r",
    "block_params",
    "single_eigen",
    "block_localize",
    "gersch_dominating",
    "gersch_report",
    "chain_localize",
    "approx_eigs",
]


@dataclass(frozen=True)
class RParams:
    """``a = ||A12||``, ``c = ||A21||`` (upper), ``d`` and ``delta = d^2 - 4ac`` (lower).

    ``d0`` is the certified lower bound of ``||A22^-1||^-1`` and ``b`` the
    upper bound of ``||A11||`` that produced ``d = d0 - b``.
    """

    a: Real
    c: Real
    d: Real
    delta: Real
    b: Real = Fraction(0)
    d0: Optional[Real] = None

    @classmethod
    def make(cls, a, c, d, b=Fraction(0), d0=None) -> "RParams":
        a, c, d = to_real(a), to_real(c), to_real(d)
        delta = sub_down(mul_down(d, d), mul_up(mul_up(4, a), c))
        return cls(a, c, d, delta, to_real(b), None if d0 is None else to_real(d0))


@dataclass(frozen=True)
class FeasibleR:
    """Open interval ``(lo, hi)`` of admissible ``r`` (endpoints rounded inward)."""

    lo: Real
    hi: Real
    recommended: Real


def feasible_r(p: RParams) -> FeasibleR:
    """Solve ``c r^2 - d r + a < 0`` for ``r > 0``."""
    if not p.d > 0:
        raise Infeasible(f"d = {p.d} is not positive")
    if p.c == 0:
        lo = div_up(p.a, p.d)
        rec = Fraction(1) if p.a == 0 else 2 * Fraction(p.a) / Fraction(p.d)
        return FeasibleR(lo, INF, rec)
    if not p.delta > 0:
        raise Infeasible(f"d^2 - 4ac = {p.delta} is not positive")
    sq = sqrt_down(p.delta)
    two_c = mul_up(2, p.c)
    lo = div_up(sub_up(p.d, sq), two_c)
    hi = div_down(add_down(p.d, sq), two_c)
    # d/(2c) in exact rational arithmetic stays strictly inside the interval
    rec = Fraction(p.d) / (2 * Fraction(p.c))
    return FeasibleR(lo, hi, rec)


@dataclass(frozen=True)
class LocalizationReport:
    """Certified spectral statement.

    ``counts["inner"]`` eigenvalues lie in the closed disk
    ``B(shift, annulus_inner)``; the remaining ``counts["outer"]`` lie outside
    the open disk ``B(shift, annulus_outer)``.  ``cone_slope`` bounds the
    invariant subspace of the inner eigenvalues:
    ``||x2|| <= cone_slope * ||x1||``; the outer one satisfies
    ``expanding_slope * ||x1|| <= ||x2||``.
    """

    mode: str
    n: int
    k: int
    shift: CRect
    annulus_inner: Real
    annulus_outer: Real
    cone_slope: Optional[Real]
    counts: dict
    disks: tuple = ()
    eigvec_box: Optional[Real] = None
    r_used: Optional[Real] = None
    expanding_slope: Optional[Real] = None
    r_range: Optional[tuple] = None
    params: Optional[RParams] = None
    rates: tuple = ()
    naive_product: Optional[IMatrix] = None
    notes: tuple = field(default=())

    def __post_init__(self):
        # producers check separation first; reaching this is a bug
        if not self.annulus_inner < self.annulus_outer:
            raise AssertionError(f"separation lost: inner {self.annulus_inner} >= outer {self.annulus_outer}")
        if sum(self.counts.values()) != self.n:
            raise ValueError("region counts must sum to n")

    @property
    def radius(self) -> Real:
        return self.annulus_inner


def block_params(A, k: int, z=0) -> RParams:
    """``a, c, d, delta`` for the split ``k`` of ``A - zI``."""
    A = as_imatrix(A)
    n = A.n
    if not 1 <= k <= n - 1:
        raise ValueError(f"split k={k} must satisfy 1 <= k <= n-1 (n={n})")
    S = A.shift(CRect.coerce(z))
    A11, A12, A21, A22 = S.blocks(k)
    b = inf_norm_upper(A11)
    d0 = inv_norm_lower(A22)
    return RParams.make(inf_norm_upper(A12), inf_norm_upper(A21), sub_down(d0, b), b, d0)


def _localize(A: IMatrix, k: int, z: CRect, optimize_r: bool, mode: str) -> LocalizationReport:
    n = A.n
    p = block_params(A, k, z)
    if not p.d0 > 0:
        raise HypothesisFailed("no certified lower bound for ||(A22 - zI)^-1||^-1")
    if not p.d > 0:
        raise HypothesisFailed(f"d = {p.d} is not positive")
    try:
        fr = feasible_r(p)
    except Infeasible as exc:
        raise HypothesisFailed(str(exc)) from exc

    notes = []
    if p.c == 0:
        # every r > a/d is admissible; the bounds below are the r -> oo limits
        inner, outer = p.b, p.d0
        slope, slope2, r_used = Fraction(0), div_down(p.d, p.a) if p.a else INF, None
        notes.append("A21 = 0: bounds are limits over all admissible r")
    elif optimize_r:
        inner = add_up(p.b, div_up(p.a, fr.hi))
        outer = sub_down(p.d0, mul_up(p.c, fr.lo))
        slope, r_used = div_up(1, fr.hi), fr.hi
        slope2 = div_down(1, fr.lo) if fr.lo > 0 else INF
        notes.append(
            "eigenvector cone uses 1/r at the optimized r; the 2c/d bound of the recommended r may differ"
        )
    else:
        r = fr.recommended
        inner = add_up(p.b, div_up(p.a, r))
        outer = sub_down(p.d0, mul_up(p.c, r))
        slope = div_up(1, r)
        slope2, r_used = div_down(1, r), r

    if not inner < outer:
        raise HypothesisFailed("rounding closed the gap between the inner and outer radii")
    disks = (
        Disk(z, inner, "inner", k),
        Disk(z, outer, "exclusion", n - k),
    )
    return LocalizationReport(
        mode=mode,
        n=n,
        k=k,
        shift=z,
        annulus_inner=inner,
        annulus_outer=outer,
        cone_slope=slope,
        counts={"inner": k, "outer": n - k},
        disks=disks,
        eigvec_box=slope if mode == "single" else None,
        r_used=r_used,
        expanding_slope=slope2,
        r_range=(fr.lo, fr.hi),
        params=p,
        notes=tuple(notes),
    )


def single_eigen(A, optimize_r: bool = False) -> LocalizationReport:
    """Disk around ``a11`` containing exactly one eigenvalue.

    ``eigvec_box`` bounds the remaining coordinates (in modulus) of the
    eigenvector normalized to first coordinate 1.
    """
    A = as_imatrix(A)
    if A.n < 2:
        raise ValueError("single_eigen needs n >= 2")
    z = A[0, 0]
    if not z.is_point:
        z = z.point()
    return _localize(A, 1, z, optimize_r, "single")


def block_localize(A, k: Optional[int] = None, z=0, optimize_r: bool = False) -> LocalizationReport:
    A = as_imatrix(A)
    if k is None:
        k = A.split_k
    if k is None:
        raise ValueError("block_localize needs a split k")
    return _localize(A, k, CRect.coerce(z), optimize_r, "block")


@dataclass(frozen=True)
class GerschDomReport:
    deltas: tuple
    eps_star: Real
    co_refined: Real
    ex_bound: Real
    dominating: bool
    ex_refined: Real = Fraction(0)


def gersch_dominating(A) -> GerschDomReport:
    """Domination of ``A - a11 I`` from an isolated first Gerschgorin disk.

    ``ex_refined = R1 + min delta_k`` is a (strictly larger) lower bound of
    the expansion rate that follows from the same row estimates.
    """
    A = as_imatrix(A)
    n = A.n
    if n < 2:
        raise ValueError("need n >= 2")
    if not standard_isolation_check(A):
        raise NotIsolated("first Gerschgorin disk is not isolated")
    R1 = sum_up(mag(A[0, j]) for j in range(1, n))
    deltas = []
    for kk in range(1, n):
        row = sum_up(mag(A[kk, j]) for j in range(n) if j != kk)
        deltas.append(sub_down(sub_down(mig(A[kk, kk] - A[0, 0]), row), R1))
    assert all(dl > 0 for dl in deltas)
    ratios = [div_down(dl, mag(A[kk, 0])) for kk, dl in zip(range(1, n), deltas) if mag(A[kk, 0]) > 0]
    if ratios:
        eps = min(ratios)
        co = div_up(R1, add_down(1, eps))
    else:
        eps = INF
        co = Fraction(0)
    ex_refined = add_down(R1, min(deltas))
    if not co < ex_refined:
        raise NotIsolated("rounding closed the gap between the rate bounds")
    if R1 > 0:
        assert co < R1
    return GerschDomReport(tuple(deltas), eps, co, R1, True, ex_refined)


def gersch_report(A) -> LocalizationReport:
    """:func:`gersch_dominating` packaged as a localization around ``a11``."""
    A = as_imatrix(A)
    g = gersch_dominating(A)
    z = A[0, 0]
    n = A.n
    return LocalizationReport(
        mode="gersch",
        n=n,
        k=1,
        shift=z,
        annulus_inner=g.co_refined,
        annulus_outer=g.ex_refined,
        cone_slope=Fraction(1),
        counts={"inner": 1, "outer": n - 1},
        disks=(Disk(z, g.co_refined, "inner", 1), Disk(z, g.ex_refined, "exclusion", n - 1)),
        r_used=Fraction(1),
        notes=("annulus_outer uses R1 + min delta_k",),
    )


def chain_localize(mats: Sequence, k: int, r=1) -> LocalizationReport:
    """Localization for ``B = A_m ... A_1`` from per-factor rates.

    ``naive_product`` is the plain interval product, kept for comparison.
    """
    mats = [as_imatrix(M) for M in mats]
    if not mats:
        raise ValueError("need at least one matrix")
    n = mats[0].n
    for M in mats:
        if M.shape != (n, n):
            raise DimensionMismatch(f"all factors must be {n}x{n}, got {M.shape[0]}x{M.shape[1]}")
    if not 1 <= k <= n - 1:
        raise ValueError(f"split k={k} must satisfy 1 <= k <= n-1")
    rates = []
    for idx, M in enumerate(mats):
        rb = is_dominating(M, r, "bounds", k)
        if not rb.dominating:
            raise NotDominatingFactor(idx, rates=rb)
        rates.append(rb)
    total = compose(rates)
    if not total.co_upper < total.ex_lower:
        raise HypothesisFailed("composed rates do not separate")
    B = mats[0]
    for M in mats[1:]:
        B = imatrix_mul(M, B)
    zero = CRect.coerce(0)
    return LocalizationReport(
        mode="chain",
        n=n,
        k=k,
        shift=zero,
        annulus_inner=total.co_upper,
        annulus_outer=total.ex_lower,
        cone_slope=div_up(1, total.r),
        counts={"inner": k, "outer": n - k},
        disks=(Disk(zero, total.co_upper, "inner", k), Disk(zero, total.ex_lower, "exclusion", n - k)),
        r_used=total.r,
        expanding_slope=div_down(1, total.r),
        rates=tuple(rates),
        naive_product=B,
    )


def approx_eigs(A) -> list:
    """NON-RIGOROUS eigenvalues of the midpoint matrix (LAPACK)."""
    M = as_imatrix(A).mid() if not isinstance(A, np.ndarray) else np.asarray(A, dtype=complex)
    try:
        vals = np.linalg.eigvals(M)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return sorted((complex(v) for v in vals), key=lambda v: (v.real, v.imag))
