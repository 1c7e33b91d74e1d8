"""Command line front end.

Exit codes: 0 certified positive, 1 certified negative, 2 input error,
3 undecided.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import report, svg
from .cones import is_dominating
from .errors import (
    ConeigError,
    DimensionMismatch,
    HypothesisFailed,
    NoConvergence,
    NoInverseCertificate,
    NotDominatingFactor,
    NotIsolated,
    ParseError,
    SingularMatrix,
)
from .gersch import (
    Partition,
    block_disk_outer,
    classical_disks,
    group_disks,
    scaled_disks,
    wilkinson_bound,
)
from .interval import CRect, to_real
from .localize import (
    approx_eigs,
    block_localize,
    chain_localize,
    gersch_dominating,
    gersch_report,
    single_eigen,
)
from .matfile import load

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_UNDECIDED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _positive_fraction(text: str) -> Fraction:
    try:
        v = to_real(text)
    except (ValueError, ZeroDivisionError, TypeError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if not isinstance(v, Fraction) or v <= 0:
        raise argparse.ArgumentTypeError(f"must be a positive rational: {text!r}")
    return v


def _int_list(text: str) -> list:
    try:
        vals = [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers: {text!r}") from None
    return vals


def _rational_list(text: str) -> list:
    return [_positive_fraction(t) for t in text.split(",")]


def _complex(text: str) -> CRect:
    parts = text.split(",")
    if len(parts) > 2:
        raise argparse.ArgumentTypeError(f"expected re[,im]: {text!r}")
    try:
        re_, im = to_real(parts[0]), to_real(parts[1]) if len(parts) == 2 else Fraction(0)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected re[,im]: {text!r}") from None
    return CRect.coerce((re_, im))


def _header(command: str, inputs) -> dict:
    return {
        "schema": report.SCHEMA_VERSION,
        "command": command,
        "inputs": [{"name": mf.name, "n": mf.n, "sha256": mf.digest} for mf in inputs],
    }


def _approx(A) -> dict:
    try:
        return report.approx(approx_eigs(A))
    except NoConvergence as exc:
        return {"note": report.NON_RIGOROUS, "error": str(exc)}


def _write_svg(path, *args, **kwargs):
    Path(path).write_text(svg.render(*args, **kwargs), encoding="utf-8")


# --- subcommands -----------------------------------------------------------------


def cmd_disks(args) -> tuple:
    mf = load(args.file)
    A = mf.matrix
    doc = _header("disks", [mf])
    if args.scale is not None:
        disks = scaled_disks(A, args.scale)
        doc["scale"] = [report.num(x, "exact") for x in args.scale]
    else:
        disks = classical_disks(A)
    doc["classical" if args.scale is None else "scaled"] = {
        "disks": [report.disk(d) for d in disks],
        "groups": [report.group(g) for g in group_disks(disks)],
    }
    overlay = None
    if args.partition is not None:
        p = Partition(tuple(args.partition))
        p.check(A.n)
        outer = []
        for i in range(len(p)):
            outer.extend(block_disk_outer(A, p, i))
        groups = group_disks(outer)
        isolated = []
        for i in range(len(p)):
            try:
                wilkinson_bound(A, p, i)
                isolated.append(i + 1)
            except NotIsolated:
                pass
        doc["block"] = {
            "partition": list(p.sizes),
            "outer_disks": [report.disk(d) for d in outer],
            "groups": [report.group(g) for g in groups],
            "isolated_blocks": isolated,
        }
        disks = outer
        if len(p) == 2:
            try:
                overlay = block_localize(A, p.sizes[0], 0)
                doc["localize"] = report.localization(overlay)
            except (HypothesisFailed, NoInverseCertificate) as exc:
                doc["localize"] = {"status": "hypothesis_failed", "reason": str(exc)}
    doc["approx"] = _approx(A)
    if args.svg:
        ann = None if overlay is None else (overlay.shift.mid(), overlay.annulus_inner, overlay.annulus_outer)
        _write_svg(args.svg, disks, ann, approx_eigs(A), title=f"disks: {mf.name}")
    return doc, EXIT_OK


def cmd_dominate(args) -> tuple:
    mf = load(args.file)
    A = mf.matrix
    k = args.k or mf.split_k
    if k is None:
        raise UsageError("no split: pass --k or set split_k in the file")
    r = args.r if args.r is not None else (mf.default_r or Fraction(1))
    mode = "exact" if args.exact else "bounds"
    if mode == "exact" and A.to_qmatrix() is None:
        raise UsageError("--exact needs a real point matrix with rational entries")
    rb = is_dominating(A.with_split(k), r, mode)
    doc = _header("dominate", [mf])
    doc["k"] = k
    doc["mode"] = mode
    doc["rates"] = report.rates(rb)
    code = {"dominating": EXIT_OK, "not_dominating": EXIT_NEGATIVE}.get(rb.verdict, EXIT_UNDECIDED)
    return doc, code


def cmd_localize(args) -> tuple:
    mf = load(args.file)
    A = mf.matrix
    doc = _header("localize", [mf])
    doc["mode"] = args.mode
    if args.mode == "single":
        if A.n < 2:
            raise UsageError("--mode single needs a matrix of size at least 2")
        run = lambda: single_eigen(A, optimize_r=args.optimize_r)
    elif args.mode == "block":
        k = args.k or mf.split_k
        if k is None:
            raise UsageError("no split: pass --k or set split_k in the file")
        if not 1 <= k <= A.n - 1:
            raise UsageError(f"--k must be in [1, {A.n - 1}]")
        z = args.shift if args.shift is not None else CRect.coerce(0)
        run = lambda: block_localize(A, k, z, optimize_r=args.optimize_r)
    else:
        if A.n < 2:
            raise UsageError("--mode gersch needs a matrix of size at least 2")

        def run():
            doc["gersch"] = report.gersch_dom(gersch_dominating(A))
            return gersch_report(A)

    try:
        rep = run()
    except (HypothesisFailed, NotIsolated, NoInverseCertificate) as exc:
        doc["status"] = "undecided"
        doc["reason"] = str(exc)
        doc["approx"] = _approx(A)
        return doc, EXIT_UNDECIDED
    doc["status"] = "certified"
    doc["report"] = report.localization(rep)
    doc["approx"] = _approx(A)
    if args.svg:
        _write_svg(
            args.svg,
            classical_disks(A),
            (rep.shift.mid(), rep.annulus_inner, rep.annulus_outer),
            approx_eigs(A),
            title=f"localize ({args.mode}): {mf.name}",
        )
    return doc, EXIT_OK


def cmd_chain(args) -> tuple:
    files = [load(f) for f in args.files]
    mats = [mf.matrix for mf in files]
    n = mats[0].n
    for mf in files:
        if mf.n != n:
            raise DimensionMismatch(f"{mf.name} is {mf.n}x{mf.n}, expected {n}x{n}")
    k = args.k or files[0].split_k
    if k is None:
        raise UsageError("no split: pass --k or set split_k in the first file")
    r = args.r if args.r is not None else (files[0].default_r or Fraction(1))
    doc = _header("chain", files)
    try:
        rep = chain_localize(mats, k, r)
    except NotDominatingFactor as exc:
        doc["status"] = "not_certified"
        doc["failing_factor"] = exc.index + 1
        doc["rates"] = report.rates(exc.rates)
        return doc, EXIT_NEGATIVE if exc.rates.refuted else EXIT_UNDECIDED
    doc["status"] = "certified"
    doc["report"] = report.localization(rep)
    if args.svg:
        _write_svg(args.svg, (), (0j, rep.annulus_inner, rep.annulus_outer), (), title="chain")
    return doc, EXIT_OK


# --- argument parsing --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="coneig", description="Certified eigenvalue localization.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", metavar="PATH", help="write the report here instead of stdout")
        p.add_argument("--timing", action="store_true", help="include wall-clock time in the report")

    p = sub.add_parser("disks", help="classical, scaled and block Gerschgorin disks")
    p.add_argument("file")
    p.add_argument("--partition", type=_int_list, metavar="K1,K2,...")
    p.add_argument("--scale", type=_rational_list, metavar="X1,X2,...")
    p.add_argument("--svg", metavar="PATH")
    common(p)
    p.set_defaults(func=cmd_disks)

    p = sub.add_parser("dominate", help="decide r-domination of a block split")
    p.add_argument("file")
    p.add_argument("--k", type=int)
    p.add_argument("--r", type=_positive_fraction, metavar="P/Q")
    p.add_argument("--exact", action="store_true", help="solve the exact rate programs")
    common(p)
    p.set_defaults(func=cmd_dominate)

    p = sub.add_parser("localize", help="certified eigenvalue enclosures")
    p.add_argument("file")
    p.add_argument("--mode", choices=("single", "block", "gersch"), default="single")
    p.add_argument("--k", type=int)
    p.add_argument("--shift", type=_complex, metavar="RE,IM")
    p.add_argument("--optimize-r", action="store_true")
    p.add_argument("--svg", metavar="PATH")
    common(p)
    p.set_defaults(func=cmd_localize)

    p = sub.add_parser("chain", help="localization for a product of matrices")
    p.add_argument("files", nargs="+")
    p.add_argument("--k", type=int)
    p.add_argument("--r", type=_positive_fraction, metavar="P/Q")
    p.add_argument("--svg", metavar="PATH")
    common(p)
    p.set_defaults(func=cmd_chain)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    start = time.perf_counter()
    try:
        doc, code = args.func(args)
    except (ParseError, DimensionMismatch, UsageError, SingularMatrix, ValueError) as exc:
        print(f"coneig: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConeigError as exc:
        print(f"coneig: error: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    if args.timing:
        doc["timing_seconds"] = round(time.perf_counter() - start, 6)
    text = report.dumps(doc)
    if args.json:
        Path(args.json).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
