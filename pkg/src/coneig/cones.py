"""Cone-space rates: r-norms, contraction/expansion bounds, exact LP rates.

The space is split as ``E = E1 x E2`` with ``dim E1 = k``; the contracting
seminorm is the sup-norm of the first ``k`` coordinates and the expanding one
the sup-norm of the rest.  All norms are infinity norms.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import MixedScale, NoInverseCertificate, SingularMatrix
from .interval import Real, add_up, div_up, mul_down, mul_up, sub_down, to_real
from .linalg import QMatrix, as_imatrix, exact_inv, inf_norm_upper, inv_norm_lower
from .lp import LPProblem, solve

__all__ = [
    "Cone",
    "ConeSpec",
    "RateBounds",
    "seminorms",
    "r_norm",
    "cone_member",
    "co_upper",
    "ex_lower",
    "r_opnorm_upper",
    "is_dominating",
    "exact_ex",
    "exact_co",
    "ex_minimizer",
    "co_minimizer",
    "rate_probes",
    "compose",
]


class Cone(enum.Enum):
    CONTRACTING = "contracting"
    EXPANDING = "expanding"
    BOTH = "both"


@dataclass(frozen=True)
class ConeSpec:
    k: int
    r: Real = Fraction(1)

    def __post_init__(self):
        r = to_real(self.r)
        if not r > 0:
            raise ValueError(f"cone scale r must be positive, got {r}")
        if self.k < 0:
            raise ValueError("k must be nonnegative")
        object.__setattr__(self, "r", r)


@dataclass(frozen=True)
class RateBounds:
    """Certified rates at scale ``r``.

    ``co_upper``/``ex_lower`` bound the contraction and expansion rates.
    ``co_lower``/``ex_upper`` are optional witnesses from the other side,
    used only to refute domination.
    """

    r: Real
    co_upper: Real
    ex_lower: Real
    dominating: bool
    exact: bool = False
    co_lower: Optional[Real] = None
    ex_upper: Optional[Real] = None
    warnings: tuple = field(default=())

    @property
    def refuted(self) -> bool:
        return self.co_lower is not None and self.ex_upper is not None and self.co_lower >= self.ex_upper

    @property
    def verdict(self) -> str:
        if self.dominating:
            return "dominating"
        if self.refuted:
            return "not_dominating"
        return "undecided"


def _abs(v):
    if isinstance(v, (int, Fraction, float)):
        return abs(v)
    return abs(complex(v))


def seminorms(x: Sequence, k: int):
    """Return ``(||x||_{<=k}, ||x||_{>k})``; an empty block gives 0."""
    if not 0 <= k <= len(x):
        raise ValueError(f"k={k} outside [0, {len(x)}]")
    first = max((_abs(v) for v in x[:k]), default=Fraction(0))
    second = max((_abs(v) for v in x[k:]), default=Fraction(0))
    return first, second


def r_norm(x: Sequence, spec: ConeSpec):
    a, b = seminorms(x, spec.k)
    return max(a, spec.r * b)


def cone_member(x: Sequence, spec: ConeSpec) -> Cone:
    a, b = seminorms(x, spec.k)
    rb = spec.r * b
    if a == rb:
        return Cone.BOTH
    return Cone.CONTRACTING if a > rb else Cone.EXPANDING


def _split(A, k):
    A = as_imatrix(A)
    k = A.split_k if k is None else k
    if k is None:
        raise ValueError("no block split given")
    n = A.n
    if not 1 <= k <= n - 1:
        raise ValueError(f"rates need both blocks nonempty (k={k}, n={n})")
    return A, k


def _scale(r) -> Real:
    r = to_real(r)
    if not r > 0:
        raise ValueError(f"cone scale r must be positive, got {r}")
    return r


def co_upper(A, r=1, k: Optional[int] = None) -> Real:
    """``||A11|| + ||A12|| / r`` rounded up."""
    A, k = _split(A, k)
    r = _scale(r)
    A11, A12, _, _ = A.blocks(k)
    return add_up(inf_norm_upper(A11), div_up(inf_norm_upper(A12), r))


def ex_lower(A, r=1, k: Optional[int] = None) -> Real:
    """``1/||A22^-1|| - r ||A21||`` rounded down, using the best inverse certificate."""
    A, k = _split(A, k)
    r = _scale(r)
    _, _, A21, A22 = A.blocks(k)
    d0 = inv_norm_lower(A22)
    if not d0 > 0:
        raise NoInverseCertificate("no route certifies that A22 is invertible")
    return sub_down(d0, mul_up(r, inf_norm_upper(A21)))


def r_opnorm_upper(A, r=1, k: Optional[int] = None) -> Real:
    """``max(||A11|| + ||A12||/r, r ||A21|| + ||A22||)`` rounded up."""
    A, k = _split(A, k)
    r = _scale(r)
    A11, A12, A21, A22 = A.blocks(k)
    first = add_up(inf_norm_upper(A11), div_up(inf_norm_upper(A12), r))
    second = add_up(mul_up(r, inf_norm_upper(A21)), inf_norm_upper(A22))
    return max(first, second)


def _as_q(A, k) -> QMatrix:
    if isinstance(A, QMatrix):
        q = A
    else:
        q = as_imatrix(A).to_qmatrix()
        if q is None:
            raise ValueError("exact rates need a real point matrix with rational entries")
    k = q.split_k if k is None else k
    if k is None:
        raise ValueError("no block split given")
    if not 1 <= k <= q.n - 1:
        raise ValueError(f"rates need both blocks nonempty (k={k}, n={q.n})")
    return q.with_split(k)


def _minmax_program(rows, offsets, weights, boxes):
    """min t s.t. |w_l (rows_l . v + offsets_l)| <= t, |v_j| <= boxes_j.

    Variables are ``v`` (free) followed by ``t`` (nonnegative).  Returns
    ``(t*, v*)``.
    """
    m = len(boxes)
    G, h = [], []
    for row, off, w in zip(rows, offsets, weights):
        wr = [w * a for a in row]
        G.append(wr + [Fraction(-1)])
        h.append(-w * off)
        G.append([-a for a in wr] + [Fraction(-1)])
        h.append(w * off)
    for j, b in enumerate(boxes):
        e = [Fraction(0)] * (m + 1)
        e[j] = Fraction(1)
        G.append(e)
        h.append(b)
        e = [Fraction(0)] * (m + 1)
        e[j] = Fraction(-1)
        G.append(e)
        h.append(b)
    obj = [Fraction(0)] * m + [Fraction(1)]
    sol = solve(LPProblem(obj, G, h, nonneg=(False,) * m + (True,)))
    assert sol.optimal, "face program is bounded and feasible by construction"
    return sol.value, sol.point[:m]


def ex_minimizer(A, r=1, k: Optional[int] = None):
    """Exact expansion rate and a minimizing unit vector.

    Minimizes ``||Ax||_r`` over the expanding faces ``x_i = 1/r`` (``i > k``)
    with ``|x_j| <= 1/r`` (``j > k``) and ``|x_j| <= 1`` (``j <= k``); the
    opposite faces follow from ``x -> -x``.
    """
    q = _as_q(A, k)
    k, n = q.split_k, q.n
    r = Fraction(_scale(r))
    weights = [Fraction(1)] * k + [r] * (n - k)
    best = None
    for i in range(k, n):
        free = [j for j in range(n) if j != i]
        rows = [[q[l, j] for j in free] for l in range(n)]
        offsets = [q[l, i] / r for l in range(n)]
        boxes = [Fraction(1) if j < k else 1 / r for j in free]
        t, v = _minmax_program(rows, offsets, weights, boxes)
        if best is None or t < best[0]:
            x = list(v)
            x.insert(i, 1 / r)
            best = (t, tuple(x))
    return best


def exact_ex(A, r=1, k: Optional[int] = None) -> Fraction:
    """Exact ``ex_r(A)`` of a real rational matrix."""
    return ex_minimizer(A, r, k)[0]


def co_minimizer(A, r=1, k: Optional[int] = None):
    """Minimum of ``||x||_r`` over ``Ax`` on the contracting unit faces.

    Returns ``(m, x)`` with ``co_r(A) = 1/m``.  Works in the image: for each
    face ``y_i = 1`` (``i <= k``) with ``|y_j| <= 1`` (``j <= k``) and
    ``|y_j| <= 1/r`` (``j > k``) the preimage ``x = A^-1 y`` is minimized.

    Raises :class:`SingularMatrix` when ``A`` is not invertible.
    """
    q = _as_q(A, k)
    k, n = q.split_k, q.n
    r = Fraction(_scale(r))
    inv = exact_inv(q)
    weights = [Fraction(1)] * k + [r] * (n - k)
    best = None
    for i in range(k):
        free = [j for j in range(n) if j != i]
        rows = [[inv[l, j] for j in free] for l in range(n)]
        offsets = [inv[l, i] for l in range(n)]
        boxes = [Fraction(1) if j < k else 1 / r for j in free]
        t, v = _minmax_program(rows, offsets, weights, boxes)
        if best is None or t < best[0]:
            y = list(v)
            y.insert(i, Fraction(1))
            best = (t, tuple(inv @ y))
    return best


def exact_co(A, r=1, k: Optional[int] = None) -> Fraction:
    """Exact ``co_r(A)`` of an invertible real rational matrix."""
    return 1 / co_minimizer(A, r, k)[0]


def rate_probes(A, r=1, k: Optional[int] = None):
    """Cheap exact witnesses ``(co_lower, ex_upper)`` for a rational point matrix.

    Every probe vector gives a valid one-sided bound: ``co_r(A)`` is at least
    ``||Ax||_r / ||x||_r`` whenever ``Ax`` lies in the contracting cone, and
    ``ex_r(A)`` is at most ``||Ax||_r`` for unit ``x`` in the expanding cone.
    """
    q = _as_q(A, k)
    k, n = q.split_k, q.n
    r = Fraction(_scale(r))
    spec = ConeSpec(k, r)

    def unit(j, s=Fraction(1)):
        e = [Fraction(0)] * n
        e[j] = s
        return e

    ex_probes = []
    for i in range(k, n):
        ex_probes.append(unit(i, 1 / r))
        for j in range(k):
            for s in (1, -1):
                x = unit(i, 1 / r)
                x[j] = Fraction(s)
                ex_probes.append(x)
    ex_up = min(r_norm(q @ x, spec) for x in ex_probes)

    co_probes = []
    for j in range(k):
        co_probes.append(unit(j))
        for i in range(k, n):
            for s in (1, -1):
                x = unit(j)
                x[i] = s / r
                co_probes.append(x)
    try:
        inv = exact_inv(q)
    except SingularMatrix:
        inv = None
    if inv is not None:
        co_probes.extend([inv @ y for y in list(co_probes)])
    co_lo = Fraction(0)
    for x in co_probes:
        y = q @ x
        if cone_member(y, spec) is not Cone.EXPANDING:
            nx = r_norm(x, spec)
            if nx:
                co_lo = max(co_lo, r_norm(y, spec) / nx)
    return co_lo, ex_up


def is_dominating(A, r=1, mode: str = "bounds", k: Optional[int] = None) -> RateBounds:
    """Domination verdict at scale ``r``.

    ``mode="bounds"`` uses the norm formulas (any interval data);
    ``mode="exact"`` solves the face LPs (real rational point data only).
    A singular matrix in exact mode falls back to the ``co`` bound.
    """
    mode = mode.lower()
    r = _scale(r)
    if mode == "exact":
        q = _as_q(A, k)
        ex = exact_ex(q, r)
        warnings = ()
        try:
            co = exact_co(q, r)
            co_lo = co
            exact = True
        except SingularMatrix:
            co = co_upper(q.to_imatrix(), r)
            co_lo, _ = rate_probes(q, r)
            exact = False
            warnings = ("A is singular; co_r taken from the norm bound",)
        return RateBounds(r, co, ex, co < ex, exact, co_lo, ex, warnings)
    if mode != "bounds":
        raise ValueError(f"unknown mode {mode!r}")
    A, k = _split(A, k)
    co = co_upper(A, r, k)
    ex = ex_lower(A, r, k)
    co_lo = ex_up = None
    q = A.to_qmatrix()
    if q is not None:
        co_lo, ex_up = rate_probes(q, r, k)
    return RateBounds(r, co, ex, co < ex, False, co_lo, ex_up)


def compose(rates: Sequence[RateBounds]) -> RateBounds:
    """Rates of a product of dominating maps sharing the same ``r``."""
    rates = list(rates)
    if not rates:
        raise ValueError("need at least one factor")
    r = rates[0].r
    if any(rb.r != r for rb in rates):
        raise MixedScale("all factors must share the same cone scale r")
    if len(rates) == 1:
        return rates[0]
    co: Real = Fraction(1)
    ex: Real = Fraction(1)
    for rb in rates:
        co = mul_up(co, rb.co_upper)
        ex = mul_down(ex, max(rb.ex_lower, Fraction(0)))
    return RateBounds(r, co, ex, co < ex, False)
