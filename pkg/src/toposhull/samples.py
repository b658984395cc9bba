"""Small monoids and random M-sets for tests, benchmarks and the CLI demo."""
from __future__ import annotations

import random

import numpy as np

from .monoid import (
    FiniteMonoid,
    cyclic_group,
    idempotent_monoid,
    right_zero_monoid,
    trivial_monoid,
)
from .mset import MSet, coequalizer, congruence_generated, empty, regular, terminal


def monoid_pool() -> dict[str, FiniteMonoid]:
    return {
        "trivial": trivial_monoid(),
        "idempotent": idempotent_monoid(),
        "C2": cyclic_group(2),
        "C3": cyclic_group(3),
        "right_zeros": right_zero_monoid(),
    }


def free_mset(M: FiniteMonoid, generators: int, fixed: int = 0) -> MSet:
    """Disjoint copies of the regular action plus ``fixed`` fixed points."""
    k = M.size
    labels, rows = [], []
    for g in range(generators):
        labels += [f"x{g}{M.elements[m]}" for m in range(k)]
        rows += [[g * k + int(M.table[m, j]) for j in range(k)] for m in range(k)]
    base = generators * k
    for p in range(fixed):
        labels.append(f"p{p}")
        rows.append([base + p] * k)
    return MSet(M, labels, rows if rows else np.zeros((0, k), dtype=np.int64))


def random_mset(M: FiniteMonoid, rng: random.Random, max_size: int = 4, tries: int = 50) -> MSet:
    """A random quotient of a free M-set, relabelled ``a, b, c, ...``.

    Every finite M-set is such a quotient, so this reaches all of them.
    """
    for _ in range(tries):
        gens = rng.randint(0, max(1, max_size // M.size) + 1)
        fixed = rng.randint(0, 1)
        F = free_mset(M, gens, fixed)
        if F.size == 0:
            return F
        pairs = [(rng.randrange(F.size), rng.randrange(F.size)) for _ in range(rng.randint(0, F.size))]
        theta = congruence_generated(F, [p for p in pairs if p[0] != p[1]])
        Q, _ = coequalizer(theta)
        if Q.size <= max_size:
            return MSet(M, [_letter(i) for i in range(Q.size)], Q.action)
    return terminal(M)


def _letter(i: int) -> str:
    s = ""
    i += 1
    while i:
        i, r = divmod(i - 1, 26)
        s = chr(ord("a") + r) + s
    return s


def mset_pool(M: FiniteMonoid, rng: random.Random, count: int = 6, max_size: int = 4) -> list[MSet]:
    """Deterministic small objects first, then distinct random ones."""
    pool = [empty(M), terminal(M), regular(M)]
    seen = {p for p in pool}
    attempts = 0
    while len(pool) < count and attempts < 40 * count:
        attempts += 1
        A = random_mset(M, rng, max_size)
        if A not in seen:
            seen.add(A)
            pool.append(A)
    return [A for A in pool if A.size <= max_size][:count]
