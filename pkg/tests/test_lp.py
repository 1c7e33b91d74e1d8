import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coneig.lp import LPProblem, LPStatus, solve


def _solve_square(rows, rhs):
    """Exact Gaussian elimination; None when singular."""
    n = len(rows)
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return None
        a[c], a[p] = a[p], a[c]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c] / a[c][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [a[i][n] / a[i][i] for i in range(n)]


def brute_force(p: LPProblem):
    """Optimum over all vertices of a bounded polytope (inequalities only)."""
    rows = list(p.G) + [tuple(-Fraction(int(i == j)) for j in range(p.num_vars)) for i in range(p.num_vars) if p.nonneg[i]]
    rhs = list(p.h) + [Fraction(0) for i in range(p.num_vars) if p.nonneg[i]]
    best = None
    for idx in itertools.combinations(range(len(rows)), p.num_vars):
        x = _solve_square([rows[i] for i in idx], [rhs[i] for i in idx])
        if x is None or not p.is_feasible(x):
            continue
        v = sum(c * xi for c, xi in zip(p.objective, x))
        if best is None or v < best:
            best = v
    return best


def test_simple_bound():
    sol = solve(LPProblem([1], G=[[-1]], h=[-3]))
    assert sol.status is LPStatus.OPTIMAL and sol.value == 3


def test_infeasible():
    sol = solve(LPProblem([1], G=[[1], [-1]], h=[1, -2]))
    assert sol.status is LPStatus.INFEASIBLE


def test_unbounded():
    sol = solve(LPProblem([-1], G=[[-1]], h=[0]))
    assert sol.status is LPStatus.UNBOUNDED


def test_equality_and_redundant_rows():
    p = LPProblem([1, 1], E=[[1, 1], [2, 2]], f=[4, 8], nonneg=(True, True))
    sol = solve(p)
    assert sol.value == 4 and p.is_feasible(sol.point)


def test_degenerate_cycling_example():
    # Beale's example cycles under the textbook rule; Bland's rule terminates.
    c = [Fraction(-3, 4), 150, Fraction(-1, 50), 6]
    G = [[Fraction(1, 4), -60, Fraction(-1, 25), 9], [Fraction(1, 2), -90, Fraction(-1, 50), 3], [0, 0, 1, 0]]
    sol = solve(LPProblem(c, G=G, h=[0, 0, 1], nonneg=(True,) * 4))
    assert sol.value == Fraction(-1, 20)


coef = st.integers(min_value=-4, max_value=4).map(Fraction)


@st.composite
def boxed_lp(draw):
    n = draw(st.integers(min_value=1, max_value=3))
    m = draw(st.integers(min_value=0, max_value=3))
    G = [[draw(coef) for _ in range(n)] for _ in range(m)]
    h = [draw(coef) for _ in range(m)]
    # a box keeps the polytope bounded so brute force sees every optimum
    for j in range(n):
        e = [Fraction(0)] * n
        e[j] = Fraction(1)
        G.append(e)
        h.append(Fraction(draw(st.integers(1, 5))))
        G.append([-v for v in e])
        h.append(Fraction(draw(st.integers(1, 5))))
    c = [draw(coef) for _ in range(n)]
    return LPProblem(c, G=G, h=h)


@given(boxed_lp())
def test_matches_vertex_enumeration(p):
    sol = solve(p)
    oracle = brute_force(p)
    if oracle is None:
        assert sol.status is LPStatus.INFEASIBLE
    else:
        assert sol.status is LPStatus.OPTIMAL
        assert sol.value == oracle
        assert p.is_feasible(sol.point)


def test_dimension_checks():
    with pytest.raises(ValueError):
        LPProblem([1, 2], G=[[1]], h=[1])
