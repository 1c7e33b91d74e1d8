"""JSON serialization of certificates.

Every certified number is written as ``{"value", "approx", "direction"}``
where ``value`` is exact (``"p/q"``, or the shortest float repr) and
``direction`` says which side the number bounds from: ``upper``,
``lower`` or ``exact``.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

from .gersch import Disk, DiskGroup
from .interval import CRect, Interval
from .linalg import IMatrix
from .localize import GerschDomReport, LocalizationReport
from .cones import RateBounds

SCHEMA_VERSION = 1
NON_RIGOROUS = "NON-RIGOROUS: floating point estimates, not certified"


def value_str(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(float(x))


def num(x, direction: str) -> dict:
    if direction not in ("upper", "lower", "exact"):
        raise ValueError(f"bad direction {direction!r}")
    approx = float(x)
    return {"value": value_str(x), "approx": approx if math.isfinite(approx) else None, "direction": direction}


def bound(x, direction: str, exact: bool = False) -> dict:
    """``num`` that upgrades to ``exact`` when the bound is known to be attained."""
    return num(x, "exact" if exact else direction)


def interval(iv: Interval) -> dict:
    if iv.is_point:
        return {"point": num(iv.lo, "exact")}
    return {"lo": num(iv.lo, "lower"), "hi": num(iv.hi, "upper")}


def crect(z: CRect) -> dict:
    return {"re": interval(z.re), "im": interval(z.im)}


def disk(d: Disk) -> dict:
    out = {"label": d.label, "center": crect(d.center), "radius": num(d.radius, "upper"), "dim": d.dim}
    if d.block is not None:
        out["block"] = d.block + 1
    return out


def exclusion_disk(d: Disk) -> dict:
    """Open disk that eigenvalues avoid; its radius is a lower bound."""
    return {"label": d.label, "center": crect(d.center), "radius": num(d.radius, "lower"), "dim": d.dim}


def group(g: DiskGroup) -> dict:
    return {
        "labels": g.labels,
        "blocks": [b + 1 for b in g.blocks],
        "count": g.count,
    }


def matrix(M: IMatrix) -> list:
    return [[crect(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]


def rates(rb: RateBounds) -> dict:
    out = {
        "r": num(rb.r, "exact"),
        "co": bound(rb.co_upper, "upper", rb.exact),
        "ex": bound(rb.ex_lower, "lower", rb.exact),
        "verdict": rb.verdict,
    }
    if not rb.exact and rb.co_lower is not None:
        out["co_witness"] = num(rb.co_lower, "lower")
    if not rb.exact and rb.ex_upper is not None:
        out["ex_witness"] = num(rb.ex_upper, "upper")
    if rb.warnings:
        out["warnings"] = list(rb.warnings)
    return out


def localization(rep: LocalizationReport) -> dict:
    inner, outer = rep.disks[0], rep.disks[1]
    out = {
        "mode": rep.mode,
        "n": rep.n,
        "k": rep.k,
        "shift": crect(rep.shift),
        "annulus_inner": num(rep.annulus_inner, "upper"),
        "annulus_outer": num(rep.annulus_outer, "lower"),
        "counts": dict(rep.counts),
        "disks": [disk(inner), exclusion_disk(outer)],
        "cone_slope": num(rep.cone_slope, "upper"),
    }
    if rep.expanding_slope is not None:
        out["expanding_slope"] = num(rep.expanding_slope, "lower")
    if rep.eigvec_box is not None:
        out["eigvec_box"] = num(rep.eigvec_box, "upper")
    if rep.r_used is not None:
        out["r_used"] = num(rep.r_used, "exact")
    if rep.r_range is not None:
        out["r_range"] = {"lo": num(rep.r_range[0], "upper"), "hi": num(rep.r_range[1], "lower")}
    if rep.params is not None:
        p = rep.params
        out["params"] = {
            "a": num(p.a, "upper"),
            "c": num(p.c, "upper"),
            "d": num(p.d, "lower"),
            "delta": num(p.delta, "lower"),
        }
    if rep.rates:
        out["factor_rates"] = [rates(rb) for rb in rep.rates]
    if rep.naive_product is not None:
        out["naive_product"] = matrix(rep.naive_product)
    if rep.notes:
        out["notes"] = list(rep.notes)
    return out


def gersch_dom(g: GerschDomReport) -> dict:
    return {
        "deltas": [num(d, "lower") for d in g.deltas],
        "eps_star": num(g.eps_star, "lower"),
        "co_refined": num(g.co_refined, "upper"),
        "ex_bound": num(g.ex_bound, "lower"),
        "ex_refined": num(g.ex_refined, "lower"),
        "dominating": g.dominating,
    }


def approx(values) -> dict:
    return {
        "note": NON_RIGOROUS,
        "eigenvalues": [{"re": float(z.real), "im": float(z.imag)} for z in values],
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False, allow_nan=False) + "\n"
