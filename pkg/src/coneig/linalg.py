"""Infinity-norm machinery for interval and exact rational matrices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import DimensionMismatch, SingularMatrix
from .interval import (
    CRect,
    Interval,
    Real,
    mag,
    mig,
    sub_down,
    sum_down,
    sum_up,
)

#: largest dimension for which the exact rational inverse route is used
EXACT_CAP = 64


def _check_split(k, n):
    if k is not None and not (0 <= k <= n):
        raise ValueError(f"split index k={k} outside [0, {n}]")


@dataclass(frozen=True)
class IMatrix:
    """Dense matrix of :class:`CRect` entries with an optional block split.

    ``split_k`` is the size of the leading diagonal block; the four blocks
    are exposed through :meth:`blocks`.
    """

    entries: tuple
    split_k: Optional[int] = None

    def __post_init__(self):
        rows = tuple(tuple(CRect.coerce(v) for v in row) for row in self.entries)
        if rows and len({len(r) for r in rows}) != 1:
            raise DimensionMismatch("ragged matrix rows")
        object.__setattr__(self, "entries", rows)
        if self.split_k is not None:
            if self.rows != self.cols:
                raise DimensionMismatch("a block split needs a square matrix")
            _check_split(self.split_k, self.rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], split_k: Optional[int] = None) -> "IMatrix":
        return cls(tuple(tuple(r) for r in rows), split_k)

    @classmethod
    def identity(cls, n: int, split_k: Optional[int] = None) -> "IMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], split_k)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IMatrix":
        return cls.from_rows([[0] * cols for _ in range(rows)])

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def n(self) -> int:
        if self.rows != self.cols:
            raise DimensionMismatch(f"matrix is {self.rows}x{self.cols}, not square")
        return self.rows

    def __getitem__(self, ij) -> CRect:
        i, j = ij
        return self.entries[i][j]

    def with_split(self, k: Optional[int]) -> "IMatrix":
        return IMatrix(self.entries, k)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IMatrix":
        return IMatrix(tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def blocks(self, k: Optional[int] = None):
        """Return ``(A11, A12, A21, A22)`` for the split ``k`` (default: own)."""
        k = self.split_k if k is None else k
        if k is None:
            raise ValueError("matrix has no block split")
        n = self.n
        _check_split(k, n)
        first, second = range(k), range(k, n)
        return (
            self.submatrix(first, first),
            self.submatrix(first, second),
            self.submatrix(second, first),
            self.submatrix(second, second),
        )

    def transpose(self) -> "IMatrix":
        return IMatrix(tuple(zip(*self.entries)) if self.entries else (), self.split_k)

    def diag(self):
        return [self.entries[i][i] for i in range(min(self.rows, self.cols))]

    def offdiag(self) -> "IMatrix":
        zero = CRect(0)
        return IMatrix(
            tuple(tuple(zero if i == j else v for j, v in enumerate(row)) for i, row in enumerate(self.entries)),
            self.split_k,
        )

    def shift(self, z) -> "IMatrix":
        """``M - z I``."""
        z = CRect.coerce(z)
        return IMatrix(
            tuple(tuple(v - z if i == j else v for j, v in enumerate(row)) for i, row in enumerate(self.entries)),
            self.split_k,
        )

    def scaled(self, x: Sequence) -> "IMatrix":
        """Similarity ``X^-1 M X`` with ``X = diag(x)``; entries ``m_ij x_j / x_i``."""
        xs = [Interval.coerce(v) for v in x]
        if len(xs) != self.n:
            raise DimensionMismatch("scaling vector length differs from matrix size")
        return IMatrix(
            tuple(
                tuple(v if i == j else v * CRect(xs[j] / xs[i]) for j, v in enumerate(row))
                for i, row in enumerate(self.entries)
            ),
            self.split_k,
        )

    def __add__(self, other: "IMatrix") -> "IMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return IMatrix(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)), self.split_k
        )

    def __sub__(self, other: "IMatrix") -> "IMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        return IMatrix(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)), self.split_k
        )

    def __matmul__(self, other: "IMatrix") -> "IMatrix":
        return imatrix_mul(self, other)

    @property
    def is_point(self) -> bool:
        return all(v.is_point for row in self.entries for v in row)

    @property
    def is_real(self) -> bool:
        return all(v.is_real for row in self.entries for v in row)

    def contains(self, other) -> bool:
        """Entrywise containment of a point/interval matrix of the same shape."""
        other = other if isinstance(other, IMatrix) else IMatrix.from_rows(other)
        if self.shape != other.shape:
            return False
        return all(a.contains(b) for r, s in zip(self.entries, other.entries) for a, b in zip(r, s))

    def to_qmatrix(self) -> Optional["QMatrix"]:
        """Exact rational copy for real point matrices with rational entries, else None."""
        if not (self.is_point and self.is_real):
            return None
        vals = []
        for row in self.entries:
            out = []
            for v in row:
                if not isinstance(v.re.lo, Fraction):
                    return None
                out.append(v.re.lo)
            vals.append(tuple(out))
        return QMatrix(tuple(vals), self.split_k)

    def mid(self) -> np.ndarray:
        return np.array([[v.mid() for v in row] for row in self.entries], dtype=complex).reshape(self.shape)

    def __repr__(self):
        return f"IMatrix({[[str(v) for v in row] for row in self.entries]}, split_k={self.split_k})"


@dataclass(frozen=True)
class QMatrix:
    """Exact real rational matrix."""

    entries: tuple
    split_k: Optional[int] = None

    def __post_init__(self):
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.entries)
        if rows and len({len(r) for r in rows}) != 1:
            raise DimensionMismatch("ragged matrix rows")
        object.__setattr__(self, "entries", rows)
        if self.split_k is not None:
            _check_split(self.split_k, len(rows))

    @classmethod
    def from_rows(cls, rows, split_k=None) -> "QMatrix":
        return cls(tuple(tuple(Fraction(v) for v in r) for r in rows), split_k)

    @classmethod
    def identity(cls, n, split_k=None) -> "QMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], split_k)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def n(self) -> int:
        if self.rows != self.cols:
            raise DimensionMismatch(f"matrix is {self.rows}x{self.cols}, not square")
        return self.rows

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def with_split(self, k) -> "QMatrix":
        return QMatrix(self.entries, k)

    def submatrix(self, rows, cols) -> "QMatrix":
        return QMatrix(tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def blocks(self, k=None):
        k = self.split_k if k is None else k
        if k is None:
            raise ValueError("matrix has no block split")
        n = self.n
        first, second = range(k), range(k, n)
        return (
            self.submatrix(first, first),
            self.submatrix(first, second),
            self.submatrix(second, first),
            self.submatrix(second, second),
        )

    def transpose(self) -> "QMatrix":
        return QMatrix(tuple(zip(*self.entries)) if self.entries else (), self.split_k)

    def shift(self, z) -> "QMatrix":
        z = Fraction(z)
        return QMatrix(
            tuple(tuple(v - z if i == j else v for j, v in enumerate(row)) for i, row in enumerate(self.entries)),
            self.split_k,
        )

    def scaled(self, x) -> "QMatrix":
        xs = [Fraction(v) for v in x]
        if any(v <= 0 for v in xs):
            raise ValueError("scaling entries must be positive")
        return QMatrix(
            tuple(tuple(v * xs[j] / xs[i] for j, v in enumerate(row)) for i, row in enumerate(self.entries)),
            self.split_k,
        )

    def __neg__(self) -> "QMatrix":
        return QMatrix(tuple(tuple(-v for v in row) for row in self.entries), self.split_k)

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise DimensionMismatch(f"{self.shape} @ {other.shape}")
            cols = list(zip(*other.entries))
            return QMatrix(
                tuple(tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols) for row in self.entries),
                self.split_k,
            )
        vec = [Fraction(v) for v in other]
        if len(vec) != self.cols:
            raise DimensionMismatch("matrix-vector size mismatch")
        return [sum((a * b for a, b in zip(row, vec)), Fraction(0)) for row in self.entries]

    def inf_norm(self) -> Fraction:
        return max((sum((abs(v) for v in row), Fraction(0)) for row in self.entries), default=Fraction(0))

    def to_imatrix(self) -> IMatrix:
        return IMatrix(self.entries, self.split_k)

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.entries], dtype=float).reshape(self.shape)


def as_imatrix(M) -> IMatrix:
    if isinstance(M, IMatrix):
        return M
    if isinstance(M, QMatrix):
        return M.to_imatrix()
    return IMatrix.from_rows(M)


def inf_norm_upper(M) -> Real:
    """Upper bound of ``max_i sum_j |m_ij|`` over every point matrix in ``M``."""
    M = as_imatrix(M)
    return max((sum_up(mag(v) for v in row) for row in M.entries), default=Fraction(0))


def inf_norm_lower(M) -> Real:
    """Lower bound of the infinity norm over every point matrix in ``M``."""
    M = as_imatrix(M)
    return max((sum_down(mig(v) for v in row) for row in M.entries), default=Fraction(0))


def inv_norm_lower_dd(M) -> Real:
    """Diagonal-dominance bound ``min_i (|m_ii| - sum_{j != i} |m_ij|)``.

    A positive value certifies that every point matrix in ``M`` is invertible
    and bounds ``1 / ||M^-1||_inf`` from below.  Zero or negative means no
    certificate.
    """
    M = as_imatrix(M)
    n = M.n
    return min(
        (
            sub_down(mig(M[i, i]), sum_up(mag(M[i, j]) for j in range(n) if j != i))
            for i in range(n)
        ),
        default=Fraction(0),
    )


def resolvent_lower(M, z=0) -> Real:
    """Diagonal-split bound ``min_i |m_ii - z| - ||offdiag(M)||_inf``.

    Positive values bound ``1 / ||(M - zI)^-1||_inf`` from below.
    """
    M = as_imatrix(M)
    z = CRect.coerce(z)
    n = M.n
    if n == 0:
        return Fraction(0)
    diag = min(mig(M[i, i] - z) for i in range(n))
    return sub_down(diag, inf_norm_upper(M.offdiag()))


def exact_inv(M: QMatrix) -> QMatrix:
    """Exact inverse by Gauss-Jordan elimination with partial pivoting."""
    n = M.n
    a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M.entries)]
    for col in range(n):
        pivot = None
        best = Fraction(0)
        for r in range(col, n):
            if abs(a[r][col]) > best:
                best, pivot = abs(a[r][col]), r
        if pivot is None:
            raise SingularMatrix(f"zero pivot column {col}")
        a[col], a[pivot] = a[pivot], a[col]
        p = a[col][col]
        prow = [v / p for v in a[col]]
        a[col] = prow
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], prow)]
    return QMatrix(tuple(tuple(row[n:]) for row in a))


def inv_inf_norm_exact(M: QMatrix) -> Fraction:
    """Exact ``1 / ||M^-1||_inf``."""
    return 1 / exact_inv(M).inf_norm()


def inv_norm_lower(M, z=0, exact_cap: int = EXACT_CAP) -> Real:
    """Best certified lower bound of ``1 / ||(M - zI)^-1||_inf``.

    Takes the maximum over the diagonal-dominance bound, the diagonal-split
    bound and, for exact real point data with ``n <= exact_cap``, the exact
    value.  Exact singularity returns 0.
    """
    M = as_imatrix(M)
    z = CRect.coerce(z)
    shifted = M.shift(z)
    if shifted.n == 0:
        raise ValueError("empty block")
    best = max(inv_norm_lower_dd(shifted), resolvent_lower(M, z))
    if shifted.n <= exact_cap:
        q = shifted.to_qmatrix()
        if q is not None:
            try:
                return inv_inf_norm_exact(q)
            except SingularMatrix:
                return Fraction(0)
    return best


def inv_norm_upper(M, z=0, exact_cap: int = EXACT_CAP) -> Real:
    """Upper bound of ``1 / ||(M - zI)^-1||_inf`` over every point matrix.

    Exact for real rational point data; otherwise uses
    ``1/||B^-1|| <= ||B e_j||_inf`` for every column ``j``.
    """
    M = as_imatrix(M)
    z = CRect.coerce(z)
    shifted = M.shift(z)
    n = shifted.n
    if n <= exact_cap:
        q = shifted.to_qmatrix()
        if q is not None:
            try:
                return inv_inf_norm_exact(q)
            except SingularMatrix:
                return Fraction(0)
    return min(max(mag(shifted[i, j]) for i in range(n)) for j in range(n))


def imatrix_mul(A, B) -> IMatrix:
    """Entrywise interval enclosure of every product of point matrices."""
    A, B = as_imatrix(A), as_imatrix(B)
    if A.cols != B.rows:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    cols = list(zip(*B.entries))
    out = []
    for row in A.entries:
        new_row = []
        for col in cols:
            acc = CRect(0)
            for a, b in zip(row, col):
                acc = acc + a * b
            new_row.append(acc)
        out.append(tuple(new_row))
    return IMatrix(tuple(out), A.split_k if A.split_k == B.split_k else None)
