import random
from fractions import Fraction

import pytest
from hypothesis import settings

from coneig import corpus_path, load
from coneig.linalg import IMatrix

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def rational(rng, lo=-20, hi=20, den=10):
    return Fraction(rng.randint(lo, hi), den)


def random_point(rng, n, lo=-20, hi=20, den=10):
    return IMatrix.from_rows([[rational(rng, lo, hi, den) for _ in range(n)] for _ in range(n)])


def random_dominating(rng, n=None, k=None):
    """Point matrix whose split is very likely certified dominating at r = 1."""
    n = n or rng.randint(2, 6)
    k = k or rng.randint(1, n - 1)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i < k and j < k:
                row.append(rational(rng, -3, 3, 10))
            elif i >= k and j >= k:
                row.append(Fraction(rng.choice([-1, 1]) * rng.randint(30, 60), 10) if i == j else rational(rng, -2, 2, 10))
            else:
                row.append(rational(rng, -3, 3, 10))
        rows.append(row)
    return IMatrix.from_rows(rows, k)


@pytest.fixture
def rng():
    return random.Random(20261015)


@pytest.fixture(scope="session")
def corpus():
    def get(name):
        return load(corpus_path(name)).matrix

    return get


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
