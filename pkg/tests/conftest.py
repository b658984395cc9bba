import random

import pytest

from toposhull.monoid import idempotent_monoid, trivial_monoid
from toposhull.mset import MSet, trivial_action
from toposhull.samples import monoid_pool, mset_pool


# ---- fixtures

@pytest.fixture
def rng():
    return random.Random(20261016)


@pytest.fixture(scope="session")
def monoids():
    return monoid_pool()


@pytest.fixture(scope="session")
def object_pool():
    """(monoid name, M-set) pairs: a few fixed ones plus seeded random ones."""
    r = random.Random(7)
    pool = []
    for name, M in monoid_pool().items():
        for A in mset_pool(M, r, count=7, max_size=4):
            pool.append((name, A))
    return pool


@pytest.fixture
def idem():
    return idempotent_monoid()


@pytest.fixture
def idem_A(idem):
    """{1,e} acting on {a, b} with a.e = b.e = b (the regular action, relabelled)."""
    return MSet(idem, ["a", "b"], [[0, 1], [1, 1]])


@pytest.fixture
def finset():
    M = trivial_monoid()
    return lambda n: trivial_action(M, [f"x{i}" for i in range(n)])
