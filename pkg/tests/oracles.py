"""Brute-force oracles shared by the tests. None of them calls the code under test."""
import itertools

from toposhull.monoid import FiniteMonoid
from toposhull.mset import MSet


# ---- independent oracles: plain brute force, no shared code paths

def naive_hom(A: MSet, B: MSet):
    """Every function A -> B filtered for equivariance, lexicographic."""
    out = []
    for values in itertools.product(range(B.size), repeat=A.size):
        if all(values[A.act(x, m)] == B.act(values[x], m)
               for x in range(A.size) for m in range(A.monoid.size)):
            out.append(values)
    return out


def set_partitions(n):
    """All partitions of range(n) as block-label tuples (restricted growth)."""
    def rec(i, labels, nb):
        if i == n:
            yield tuple(labels)
            return
        for b in range(nb + 1):
            yield from rec(i + 1, labels + [b], max(nb, b + 1))
    yield from rec(0, [], 0)


def brute_congruences(B: MSet):
    out = []
    for p in set_partitions(B.size):
        if all(p[B.act(x, m)] == p[B.act(y, m)]
               for x in range(B.size) for y in range(B.size) if p[x] == p[y]
               for m in range(B.monoid.size)):
            out.append(p)
    return out


def closed_subsets(X: MSet):
    out = []
    for r in range(X.size + 1):
        for s in itertools.combinations(range(X.size), r):
            if all(X.act(x, m) in s for x in s for m in range(X.monoid.size)):
                out.append(frozenset(s))
    return out


def transformation_monoid(gens, n):
    """Monoid generated by maps on range(n) under 'apply left, then right'."""
    ident = tuple(range(n))
    elems = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens:
                h = tuple(g[f[i]] for i in range(n))
                if h not in seen:
                    seen.add(h)
                    elems.append(h)
                    nxt.append(h)
        frontier = nxt
    index = {e: i for i, e in enumerate(elems)}
    table = [[index[tuple(g[f[i]] for i in range(n))] for g in elems] for f in elems]
    return FiniteMonoid([f"t{i}" if i else "1" for i in range(len(elems))], table, 0)


def random_transformation_monoid(rng, n=3, max_size=6):
    while True:
        gens = [tuple(rng.randrange(n) for _ in range(n)) for _ in range(rng.randint(1, 2))]
        M = transformation_monoid(gens, n)
        if M.size <= max_size:
            return M


def naive_monics(A: MSet, B: MSet):
    return [t for t in naive_hom(A, B) if len(set(t)) == len(t)]


def definitionally_injective(B: MSet, objects) -> bool:
    """Every map into B extends along every mono among ``objects``."""
    into_b = {id(X): naive_hom(X, B) for X in objects}
    for X in objects:
        for Y in objects:
            monos = naive_monics(X, Y)
            if not monos:
                continue
            ys = naive_hom(Y, B)
            for m in monos:
                for g in into_b[id(X)]:
                    if not any(all(h[m[x]] == g[x] for x in range(X.size)) for h in ys):
                        return False
    return True


def definitionally_essential(A: MSet, E: MSet, e) -> bool:
    """``g . e`` monic forces ``g`` monic, for every quotient map g of E."""
    for p in brute_congruences(E):
        if len(set(p)) == E.size:
            continue
        if len({p[e[a]] for a in range(A.size)}) == A.size:
            return False
    return True


def all_finsets(max_size):
    M = FiniteMonoid(["1"], [[0]], 0)
    return [MSet(M, [f"s{i}" for i in range(n)], [[i] for i in range(n)] if n else [[0]][:0])
            for n in range(max_size + 1)]
