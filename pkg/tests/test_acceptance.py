"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed in the terminal
summary (see ``conftest.py``) and when this file is run as a script.
"""

import math
import random
from fractions import Fraction

import pytest

from coneig import corpus_path, load
from coneig.cones import (
    Cone,
    ConeSpec,
    co_minimizer,
    co_upper,
    compose,
    cone_member,
    ex_lower,
    exact_co,
    exact_ex,
    is_dominating,
)
from coneig.errors import ConeigError, Infeasible, SingularMatrix
from coneig.gersch import classical_disks, first_disk_scaling
from coneig.interval import CRect, Interval
from coneig.linalg import IMatrix
from coneig.localize import (
    approx_eigs,
    block_localize,
    block_params,
    chain_localize,
    feasible_r,
    gersch_dominating,
    gersch_report,
    single_eigen,
)

from conftest import random_dominating, random_point
from oracles import random_vector, sample_rates

RESULTS = {}


def record(number, title, checks):
    """``checks`` maps a short description to a bool; all must hold."""
    ok = all(checks.values())
    failed = [name for name, good in checks.items() if not good]
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}"
    if failed:
        line += "  (failed: " + "; ".join(failed) + ")"
    RESULTS[number] = line
    print(line)
    assert ok, line


def M(name):
    return load(corpus_path(name)).matrix


def close(x, target, tol):
    return abs(float(x) - target) <= tol


# -- 1 -------------------------------------------------------------------------


def test_criterion_01_exact_rates():
    A = M("dominat-exactly")
    co, ex = exact_co(A), exact_ex(A)
    record(1, "exact co = 2, ex = 3 for the 2x2 [[2,3],[2,5]]", {
        "co == 2": co == 2 and isinstance(co, Fraction),
        "ex == 3": ex == 3 and isinstance(ex, Fraction),
    })


# -- 2 -------------------------------------------------------------------------


def test_criterion_02_bound_rates():
    A = M("dominat-ineq")
    rb = is_dominating(A)
    record(2, "norm bounds co <= 3.5 < 4 <= ex for [[2,1.5],[1,5]]", {
        "co_upper == 3.5": rb.co_upper == Fraction(7, 2),
        "ex_lower == 4": rb.ex_lower == 4,
        "dominating": rb.dominating,
    })


# -- 3 -------------------------------------------------------------------------


def test_criterion_03_not_g_better():
    A = M("G-better")
    m, x = co_minimizer(A)
    target = (Fraction(-2), Fraction(1), Fraction(99, 100))
    record(3, "exact co = 1/2, rescaled co = 9/26, minimizer (-2, 1, 99/100)", {
        "co == 1/2": exact_co(A) == Fraction(1, 2),
        "scaled co == 9/26": exact_co(A.scaled([Fraction(9, 5), 1, 1])) == Fraction(9, 26),
        "minimizer norm 2": max(abs(v) for v in x) == 2 and m == 2,
        "minimizer vertex": tuple(x) in (target, tuple(-v for v in target)),
    })


# -- 4 -------------------------------------------------------------------------


def test_criterion_04_subspace():
    rep = block_localize(M("subspace"), 2, 0)
    record(4, "block split k=2: slope 1/2, inner 11/40, exclusion 3/5", {
        "slope": rep.cone_slope == Fraction(1, 2),
        "inner": rep.annulus_inner == Fraction(11, 40),
        "outer": rep.annulus_outer == Fraction(3, 5),
    })


# -- 5 -------------------------------------------------------------------------


def test_criterion_05_gersz_our():
    A = M("gersz-our")
    default = single_eigen(A)
    opt = single_eigen(A, optimize_r=True)
    tr = single_eigen(A.transpose(), optimize_r=True)
    sup_r = (72 + math.sqrt(3597)) / 46
    record(5, "single eigenvalue radius 1/5, optimized 0.110102, transpose 0.104565", {
        "default radius 1/5": default.annulus_inner == Fraction(1, 5) and default.r_used == 3,
        "optimized radius": close(opt.annulus_inner, (3 - math.sqrt(6)) / 5, 1e-6)
        and close(opt.annulus_inner, 0.110102, 1e-6),
        "transpose radius": close(tr.annulus_inner, 0.104565, 1e-6),
        "transpose sup r": close(tr.r_range[1], sup_r, 1e-9),
    })


# -- 6 -------------------------------------------------------------------------


def test_criterion_06_g_better():
    A = M("G-better")
    p = block_params(A, 1, 0)
    try:
        feasible_r(p)
        infeasible = False
    except Infeasible:
        infeasible = True
    g = gersch_dominating(A)
    s = first_disk_scaling(A)
    record(6, "cone route infeasible, Gerschgorin route dominating, sup r = 1+sqrt(49/50)", {
        "delta = 4 - 200": p.delta == 4 - 200,
        "Infeasible": infeasible,
        "dominating": g.dominating and g.co_refined < g.ex_bound,
        "sup r": close(s.r_hi, 1 + math.sqrt(49 / 50), 1e-12),
        "bound 0.5025": close(s.bound, 0.5025, 1e-4),
    })


# -- 7 -------------------------------------------------------------------------


def test_criterion_07_ma_better_g():
    rep = single_eigen(M("mA-better-G"), optimize_r=True)
    rel = abs(float(rep.annulus_inner) - 0.0817) / 0.0817
    record(7, f"optimized radius {float(rep.annulus_inner):.5f} within 2% of 0.0817", {
        "within 2%": rel <= 0.02,
    })


# -- 8 -------------------------------------------------------------------------


def test_criterion_08_chain():
    A = M("iteration")
    rep = chain_localize([A] * 15, 1)
    b22 = rep.naive_product[1, 1].re
    published = Interval(Fraction("433.611"), Fraction("32782.94"))
    widened = Interval(published.lo - Fraction(1, 100), published.hi + Fraction(1, 100))
    B1 = IMatrix.from_rows([[1, 100], [-100, 521]])
    inside = all(rep.naive_product[i, j].contains(B1[i, j]) for i in range(2) for j in range(2))
    eigs = approx_eigs(B1)
    record(8, "chain rates 0.51^15 / 1.49^15, naive product, adversarial B1", {
        "co <= 0.51^15": rep.annulus_inner <= Fraction(51, 100) ** 15,
        "ex >= 1.49^15": rep.annulus_outer >= Fraction(149, 100) ** 15,
        f"(2,2) enclosure [{float(b22.lo):.4f}, {float(b22.hi):.4f}] contains [433.611, 32782.94]": b22.contains(published),
        "(2,2) enclosure within widened interval": widened.contains(b22),
        "B1 inside product": inside,
        "eig(B1) = {21, 501}": len(eigs) == 2 and close(eigs[0].real, 21, 1e-6) and close(eigs[1].real, 501, 1e-6)
        and all(abs(e.imag) <= 1e-6 for e in eigs),
    })


# -- 9 -------------------------------------------------------------------------


def _cone_invariance(qa, k, rng, trials=12):
    spec = ConeSpec(k, 1)
    for _ in range(trials):
        x = random_vector(rng, qa.n)
        y = qa @ x
        if cone_member(x, spec) is not Cone.CONTRACTING and cone_member(y, spec) is Cone.CONTRACTING:
            return False
        if cone_member(y, spec) is not Cone.EXPANDING and cone_member(x, spec) is Cone.EXPANDING:
            return False
    return True


def test_criterion_09_property_suite():
    rng = random.Random(909)
    counts = dict(a=0, b=0, c=0, d=0, e=0)
    bad = dict(a=0, b=0, c=0, d=0, e=0)
    dominating_by_shape = {}
    for i in range(1000):
        A = random_dominating(rng) if i % 2 == 0 else random_point(rng, rng.randint(2, 6))
        n = A.n
        k = A.split_k or rng.randint(1, n - 1)
        A = A.with_split(k)
        qa = A.to_qmatrix()
        try:
            rb = is_dominating(A)
        except ConeigError:
            rb = None
        # (a) cone invariance of certified-dominating matrices
        if rb is not None and rb.dominating:
            counts["a"] += 1
            bad["a"] += not _cone_invariance(qa, k, rng)
            dominating_by_shape.setdefault((n, k), []).append((qa, rb))
        # (b) exact rates between the norm bounds, (c) sampling oracle
        ex = exact_ex(qa)
        try:
            co = exact_co(qa)
        except SingularMatrix:
            co = None
        co_s, ex_s = sample_rates(qa, k, 1, rng, trials=20)
        counts["b"] += 1
        ok_b = co is None or co <= co_upper(A)
        try:
            ok_b = ok_b and ex >= ex_lower(A)
        except ConeigError:
            pass
        bad["b"] += not ok_b
        counts["c"] += 1
        ok_c = (ex_s is None or ex <= ex_s) and (co is None or co_s is None or co >= co_s)
        bad["c"] += not ok_c
        # (d) every approximate eigenvalue lies in some classical disk
        counts["d"] += 1
        disks = classical_disks(A)
        bad["d"] += not all(any(d.contains(z, 1e-8 * (1 + abs(z))) for d in disks) for z in approx_eigs(A))
    # (e) composed rates bound the exact rates of products
    for group in dominating_by_shape.values():
        for (qa, ra), (qb, rb) in zip(group, group[1:]):
            P = qb @ qa
            comp = compose([ra, rb])
            counts["e"] += 1
            ok = exact_ex(P) >= comp.ex_lower
            try:
                ok = ok and exact_co(P) <= comp.co_upper
            except SingularMatrix:
                pass
            bad["e"] += not ok
    checks = {f"({p}) {counts[p]} cases, {bad[p]} violations": bad[p] == 0 and counts[p] > 0 for p in "abcde"}
    tally = ", ".join(f"({p}) {counts[p]}" for p in "abcde")
    record(9, f"property suite over 1000 random instances (n <= 6); cases {tally}", checks)


# -- 10 ------------------------------------------------------------------------


def _fuzz_matrix(rng):
    n = rng.randint(1, 6)
    kind = rng.random()
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            u = rng.random()
            if u < 0.25:
                v = 0
            elif u < 0.5:
                v = Fraction(rng.randint(-30, 30), rng.choice([1, 2, 10]))
            elif u < 0.65:
                a = Fraction(rng.randint(-30, 30), 10)
                v = Interval(a, a + Fraction(rng.randint(0, 5), 100))
            elif u < 0.75:
                v = CRect(Interval(Fraction(rng.randint(-9, 9), 3)), Interval(Fraction(rng.randint(-9, 9), 3)))
            elif u < 0.85:
                v = rng.uniform(-3, 3)
            else:
                v = Fraction(1) if i == j else Fraction(rng.randint(-1, 1), 100)
            row.append(v)
        rows.append(row)
    if kind < 0.1:
        rows = [[rows[0][0]] * n for _ in range(n)]  # rank one / repeated entries
    elif kind < 0.2:
        for i in range(n):
            rows[i][i] = rows[0][0]  # coinciding centers
    return IMatrix.from_rows(rows)


def test_criterion_10_separation_fuzz():
    rng = random.Random(1010)
    emitted = 0
    violations = 0
    for _ in range(10_000):
        A = _fuzz_matrix(rng)
        n = A.n
        attempts = []
        attempts.append(lambda: single_eigen(A, optimize_r=rng.random() < 0.5))
        k = rng.randint(0, n)
        z = rng.choice([0, Fraction(rng.randint(-10, 10), 4), 0.5j])
        attempts.append(lambda: block_localize(A, k, z, optimize_r=rng.random() < 0.5))
        attempts.append(lambda: gersch_report(A))
        if n >= 2:
            attempts.append(lambda: chain_localize([A] * rng.randint(1, 3), rng.randint(1, n - 1), rng.choice([1, Fraction(1, 2), 3])))
        for attempt in attempts:
            try:
                rep = attempt()
            except (ConeigError, ValueError):
                continue
            emitted += 1
            violations += not rep.annulus_inner < rep.annulus_outer
    record(10, f"separation over 10^4 fuzzed inputs ({emitted} reports emitted)", {
        "no inner >= outer": violations == 0,
        "some reports emitted": emitted > 0,
    })


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
