import random
from fractions import Fraction

import pytest

from coneig.errors import DimensionMismatch, Infeasible, NonpositiveScale, NotIsolated
from coneig.gersch import (
    Disk,
    Membership,
    Partition,
    block_disk_member,
    block_disk_outer,
    classical_disks,
    first_disk_scaling,
    generalized_isolation_check,
    group_disks,
    scaled_disks,
    standard_isolation_check,
    wilkinson_bound,
)
from coneig.interval import CRect, Interval
from coneig.linalg import IMatrix
from coneig.localize import approx_eigs

from conftest import random_point

TOL = 1e-8


def summary(disks):
    return [(d.center.mid(), d.radius) for d in disks]


def test_classical_g_better(corpus):
    assert summary(classical_disks(corpus("G-better"))) == [(0, 1), (2, Fraction(1, 2)), (100, 50)]
    assert [g.count for g in group_disks(classical_disks(corpus("G-better")))] == [1, 1, 1]


def test_classical_gersz_our(corpus):
    disks = classical_disks(corpus("gersz-our"))
    assert [d.radius for d in disks] == [Fraction(3, 5), Fraction(3, 5), Fraction(2, 5)]
    groups = group_disks(disks)
    assert [(g.labels, g.count) for g in groups] == [(["G1"], 1), (["G2", "G3"], 2)]


def test_scaled_gersz_our(corpus):
    A = corpus("gersz-our")
    assert scaled_disks(A, [3, 1, 1])[0].radius == Fraction(1, 5)
    assert summary(scaled_disks(A, [1, 1, 1])) == summary(classical_disks(A))
    assert scaled_disks(IMatrix.from_rows([[7]]), [5])[0].radius == 0


def test_scaled_rejects_nonpositive(corpus):
    with pytest.raises(NonpositiveScale):
        scaled_disks(corpus("gersz-our"), [1, 0, 1])
    with pytest.raises(DimensionMismatch):
        scaled_disks(corpus("gersz-our"), [1, 1])


def test_diagonal_disks_have_zero_radius():
    A = IMatrix.from_rows([[1, 0, 0], [0, 2, 0], [0, 0, 3]])
    assert all(d.radius == 0 for d in classical_disks(A))
    for p in (Partition((1, 2)), Partition((3,)), Partition((2, 1))):
        for i in range(len(p)):
            assert all(d.radius == 0 for d in block_disk_outer(A, p, i))
        for j in range(len(p)):
            assert wilkinson_bound(A, p, j).ratio == 1


def test_block_outer_g_better(corpus):
    A = corpus("G-better")
    p = Partition((1, 2))
    outer = block_disk_outer(A, p, 1)
    assert summary(outer) == [(2, 50), (100, 50)]
    assert all(d.dim == 2 for d in outer)
    # block 1 is the scalar disk B(0, 1), block 2 reaches zero
    first = block_disk_outer(A, p, 0)
    assert summary(first) == [(0, 1)]
    groups = group_disks(first + outer)
    assert len(groups) == 1 and groups[0].count == 3


def test_block_member(corpus):
    A = corpus("G-better")
    p = Partition((1, 2))
    assert block_disk_member(A, p, 1, 0) is Membership.CERTIFIED_IN
    assert block_disk_member(A, p, 1, 10**6) is Membership.CERTIFIED_OUT
    # a box straddling the boundary |lambda| = 1 of G1 = B(0, 1)
    lam = CRect(Interval(1 - Fraction(1, 10**12), 1 + Fraction(1, 10**12)))
    B = IMatrix.from_rows([[0, 1], [1, 0]])
    assert block_disk_member(B, Partition((1, 1)), 0, lam) is Membership.UNKNOWN


def test_partition_mismatch():
    with pytest.raises(DimensionMismatch):
        block_disk_outer(IMatrix.identity(3), Partition((1, 1)), 0)
    with pytest.raises(ValueError):
        Partition((2, 0))


def test_wilkinson(corpus):
    assert wilkinson_bound(corpus("G-better"), Partition((1, 1, 1)), 0).ratio == 1
    with pytest.raises(NotIsolated):
        wilkinson_bound(corpus("subspace"), Partition((1, 1, 1, 1)), 0)


def test_isolation_checks(corpus):
    assert standard_isolation_check(corpus("G-better"))
    assert not standard_isolation_check(corpus("mA-better-G"))
    assert standard_isolation_check(IMatrix.from_rows([[1, 0], [0, 2]]))
    assert generalized_isolation_check(IMatrix.from_rows([[1, 0], [0, 2]]))


def test_first_disk_scaling(corpus):
    s = first_disk_scaling(corpus("G-better"))
    assert abs(float(s.r_hi) - (1 + (49 / 50) ** 0.5)) < 1e-12
    assert abs(float(s.bound) - 0.5025) < 1e-4
    disks = s.disks(corpus("G-better"))
    assert len(group_disks(disks)) == 3


def test_first_disk_scaling_infeasible(corpus):
    with pytest.raises(Infeasible):
        first_disk_scaling(corpus("subspace"))


def test_single_disk_group():
    g = group_disks([Disk(0, 1)])
    assert len(g) == 1 and g[0].count == 1


def _eig_in_union(z, disks):
    return any(d.contains(z, TOL * (1 + abs(z))) for d in disks)


@pytest.mark.parametrize("seed", range(40))
def test_spectrum_in_disk_unions(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    A = random_point(rng, n)
    eigs = approx_eigs(A)
    assert all(_eig_in_union(z, classical_disks(A)) for z in eigs)
    sizes = []
    left = n
    while left:
        s = rng.randint(1, left)
        sizes.append(s)
        left -= s
    p = Partition(tuple(sizes))
    outer = [d for i in range(len(p)) for d in block_disk_outer(A, p, i)]
    assert all(_eig_in_union(z, outer) for z in eigs)
    x = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(n)]
    scaled = scaled_disks(A, x)
    assert all(_eig_in_union(z, scaled) for z in eigs)


@pytest.mark.parametrize("seed", range(40))
def test_group_counts_match_spectrum(seed):
    rng = random.Random(1000 + seed)
    n = rng.randint(2, 6)
    rows = [[Fraction(rng.randint(-3, 3), 10) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        rows[i][i] = Fraction(rng.randint(-20, 20), 2)
    A = IMatrix.from_rows(rows)
    disks = classical_disks(A)
    groups = group_disks(disks)
    eigs = approx_eigs(A)
    for g in groups:
        inside = [z for z in eigs if _eig_in_union(z, g.disks)]
        assert len(inside) == g.count


@pytest.mark.parametrize("seed", range(60))
def test_generalized_implies_standard(seed):
    rng = random.Random(2000 + seed)
    n = rng.randint(2, 5)
    rows = [[Fraction(rng.randint(-2, 2), 10) for _ in range(n)] for _ in range(n)]
    rows[0][0] = Fraction(rng.randint(-10, 10))
    A = IMatrix.from_rows(rows)
    if generalized_isolation_check(A):
        assert standard_isolation_check(A)
