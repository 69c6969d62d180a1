import random
from pathlib import Path

import pytest
from hypothesis import settings

from equitoric import Fan

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


def make_p1() -> Fan:
    return Fan(dim=1, rays=((1,), (-1,)), max_cones=((0,), (1,)))


def make_p2() -> Fan:
    return Fan(dim=2, rays=((1, 0), (0, 1), (-1, -1)), max_cones=((0, 1), (1, 2), (2, 0)))


def make_p1xp1() -> Fan:
    return Fan(
        dim=2,
        rays=((1, 0), (0, 1), (-1, 0), (0, -1)),
        max_cones=((0, 1), (1, 2), (2, 3), (3, 0)),
    )


def make_hirzebruch(a: int) -> Fan:
    return Fan(
        dim=2,
        rays=((1, 0), (0, 1), (-1, a), (0, -1)),
        max_cones=((0, 1), (1, 2), (2, 3), (3, 0)),
    )


def make_p3() -> Fan:
    return Fan(
        dim=3,
        rays=((1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)),
        max_cones=((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)),
    )


def make_cube() -> Fan:
    # product of three lines: the eight octants
    return Fan(
        dim=3,
        rays=((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)),
        max_cones=tuple(
            (i, 2 + j, 4 + k) for i in range(2) for j in range(2) for k in range(2)
        ),
    )


@pytest.fixture(scope="session")
def p1() -> Fan:
    return make_p1()


@pytest.fixture(scope="session")
def p2() -> Fan:
    return make_p2()


@pytest.fixture(scope="session")
def p1xp1() -> Fan:
    return make_p1xp1()


@pytest.fixture(scope="session")
def f2() -> Fan:
    return make_hirzebruch(2)


def random_unimodular(rng: random.Random, n: int, bound: int = 3) -> list[list[int]]:
    """Random determinant +-1 integer matrix with entries within the bound.

    Built as a product of shears, swaps and sign flips; candidates whose
    entries overflow the bound are rejected and rebuilt.
    """
    while True:
        m = [[int(i == j) for j in range(n)] for i in range(n)]
        for _ in range(rng.randint(1, 3 * n)):
            op = rng.randrange(3)
            i = rng.randrange(n)
            j = rng.randrange(n)
            if i == j:
                continue
            if op == 0:
                q = rng.choice((-2, -1, 1, 2))
                for k in range(n):
                    m[i][k] += q * m[j][k]
            elif op == 1:
                m[i], m[j] = m[j], m[i]
            else:
                m[i] = [-x for x in m[i]]
        if max(abs(x) for row in m for x in row) <= bound:
            return m
