"""Matrix file reader.

Grammar (JSON)::

    {
      "name": "example",            optional
      "n": 3,                       optional, checked when present
      "entries": [[s, s, s], ...],  required, square
      "split_k": 1,                 optional
      "default_r": "3/2"            optional
    }

A scalar ``s`` is a JSON number, a decimal or ``"p/q"`` string, an
interval ``[lo, hi]`` of those, or ``{"re": x, "im": y}`` where ``x`` and
``y`` are scalars or intervals.  Numbers are read exactly: ``0.15`` is
``3/20``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .errors import ParseError
from .interval import CRect, Interval, to_real
from .linalg import IMatrix

__all__ = ["MatrixFile", "parse_scalar", "loads", "load"]


@dataclass(frozen=True)
class MatrixFile:
    name: str
    matrix: IMatrix
    split_k: Optional[int] = None
    default_r: Optional[Fraction] = None
    digest: str = ""

    @property
    def n(self) -> int:
        return self.matrix.n


def _real(x, where):
    if isinstance(x, bool) or x is None:
        raise ParseError(f"{where}: expected a number, got {json.dumps(x)}")
    try:
        v = to_real(x)
    except (ValueError, TypeError, ZeroDivisionError, ArithmeticError) as exc:
        raise ParseError(f"{where}: cannot read {x!r} as a number ({exc})") from None
    if isinstance(v, float):
        raise ParseError(f"{where}: non-finite or inexact value {x!r}")
    return v


def _interval(x, where) -> Interval:
    if isinstance(x, list):
        if len(x) != 2:
            raise ParseError(f"{where}: an interval needs exactly [lo, hi]")
        lo, hi = _real(x[0], where + "[0]"), _real(x[1], where + "[1]")
        if lo > hi:
            raise ParseError(f"{where}: interval lower end exceeds upper end")
        return Interval(lo, hi)
    return Interval(_real(x, where))


def parse_scalar(x, where: str = "scalar") -> CRect:
    if isinstance(x, dict):
        extra = set(x) - {"re", "im"}
        if extra or "re" not in x:
            raise ParseError(f"{where}: complex scalars use keys 're' and 'im'")
        return CRect(_interval(x["re"], where + ".re"), _interval(x.get("im", 0), where + ".im"))
    return CRect(_interval(x, where))


def _locate(text: str, needle: str):
    """1-based line/column of the first occurrence of ``needle`` (best effort)."""
    pos = text.find(needle)
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def loads(text: str, source: str = "<string>") -> MatrixFile:
    try:
        doc = json.loads(text, parse_float=Decimal, parse_int=int)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    if not isinstance(doc, dict) or "entries" not in doc:
        raise ParseError(f"{source}: top level must be an object with 'entries'", line=1, column=1)
    rows = doc["entries"]
    line, col = _locate(text, '"entries"')
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError(f"{source}: 'entries' must be a non-empty list of rows", line=line, column=col)
    n = len(rows)
    for i, r in enumerate(rows):
        if len(r) != n:
            raise ParseError(f"{source}: row {i + 1} has {len(r)} entries, expected {n}", line=line, column=col)
    if "n" in doc and doc["n"] != n:
        raise ParseError(f"{source}: declared n={doc['n']} but entries are {n}x{n}", *_locate(text, '"n"'))
    try:
        entries = [[parse_scalar(v, f"entries[{i}][{j}]") for j, v in enumerate(r)] for i, r in enumerate(rows)]
    except ParseError as exc:
        raise ParseError(f"{source}: {exc}", line=line, column=col) from None
    split_k = doc.get("split_k")
    if split_k is not None and (not isinstance(split_k, int) or not 1 <= split_k <= n - 1):
        raise ParseError(f"{source}: split_k must be an integer in [1, n-1]", *_locate(text, '"split_k"'))
    default_r = doc.get("default_r")
    if default_r is not None:
        default_r = _real(default_r, "default_r")
        if not default_r > 0:
            raise ParseError(f"{source}: default_r must be positive", *_locate(text, '"default_r"'))
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    name = str(doc.get("name", Path(source).stem))
    return MatrixFile(name, IMatrix(tuple(tuple(r) for r in entries), split_k), split_k, default_r, digest)


def load(path) -> MatrixFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    return loads(text, str(path))
