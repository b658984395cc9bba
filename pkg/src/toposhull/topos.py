"""Subobject classifier, exponentials and the singleton embedding.

``Omega`` is carried by the right ideals of ``M`` with ``I.m = {n : m*n in I}``.
``B^A`` is carried by the equivariant maps ``M x A -> B`` (diagonal action
on the product) with ``(f.n)(m, a) = f(n*m, a)``; evaluation is
``f(1, a)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainMismatch, ShapeMismatch
from .monoid import FiniteMonoid, RightIdeal, format_ideal, right_ideals
from .mset import (
    EquivariantMap,
    MSet,
    SubMSet,
    hom_tables,
    product,
    regular,
)


@dataclass(frozen=True, eq=False)
class OmegaObject:
    as_mset: MSet
    ideals: tuple[RightIdeal, ...]
    truth: int
    lookup: dict

    @property
    def monoid(self) -> FiniteMonoid:
        return self.as_mset.monoid

    def index_of(self, members) -> int:
        return self.lookup[frozenset(members)]

    def definitions(self) -> dict[str, str]:
        M = self.monoid
        return {self.as_mset.elements[i]: format_ideal(M, I) for i, I in enumerate(self.ideals)}


@lru_cache(maxsize=64)
def omega(M: FiniteMonoid) -> OmegaObject:
    ideals = tuple(right_ideals(M))
    lookup = {frozenset(I): i for i, I in enumerate(ideals)}
    table = M.table
    act = []
    for I in ideals:
        row = []
        for m in range(M.size):
            moved = frozenset(n for n in range(M.size) if int(table[m, n]) in I)
            row.append(lookup[moved])
        act.append(row)
    labels = [f"I{i}" for i in range(len(ideals))]
    truth = lookup[frozenset(range(M.size))]
    return OmegaObject(MSet(M, labels, act), ideals, truth, lookup)


def characteristic_map(S: SubMSet) -> EquivariantMap:
    """``x -> {m : x.m in S}``."""
    X = S.parent
    Om = omega(X.monoid)
    lookup = Om.lookup
    k = X.monoid.size
    mapping = [lookup[frozenset(m for m in range(k) if int(X.action[x, m]) in S.members)]
               for x in range(X.size)]
    return EquivariantMap(X, Om.as_mset, mapping)


def subobject_of_char(chi: EquivariantMap) -> SubMSet:
    Om = omega(chi.dom.monoid)
    if chi.cod != Om.as_mset:
        raise DomainMismatch("characteristic maps land in Omega")
    return SubMSet(chi.dom, [x for x in range(chi.dom.size) if chi(x) == Om.truth])


@dataclass(frozen=True, eq=False)
class ExponentialObject:
    """``B^A``. ``tables[i]`` is the map ``M x A -> B`` behind element ``i``,
    indexed by ``m * |A| + a``."""

    as_mset: MSet
    base: MSet
    target: MSet
    shape: MSet
    tables: np.ndarray
    eval_product: MSet
    eval: EquivariantMap
    lookup: dict

    def index_of(self, table) -> int:
        return self.lookup[np.ascontiguousarray(table, dtype=np.int64).tobytes()]

    def apply(self, f: int, m: int, a: int) -> int:
        return int(self.tables[f, m * self.base.size + a])

    def definitions(self) -> dict[str, str]:
        M, A, B = self.base.monoid, self.base, self.target
        out = {}
        for i, row in enumerate(self.tables):
            parts = [f"({M.elements[m]},{A.elements[a]})->{B.elements[int(row[m * A.size + a])]}"
                     for m in range(M.size) for a in range(A.size)]
            out[self.as_mset.elements[i]] = " ".join(parts)
        return out


def exponential(A: MSet, B: MSet, label: str = "F") -> ExponentialObject:
    if A.monoid != B.monoid:
        raise DomainMismatch("exponential of M-sets over different monoids")
    M = A.monoid
    shape, _, _ = product(regular(M), A)
    tables = hom_tables(shape, B)
    na = A.size
    lookup = {row.tobytes(): i for i, row in enumerate(tables)}
    # (f.n)(m, a) = f(n*m, a): column m*|A|+a of f.n reads column (n*m)*|A|+a of f
    act = np.empty((len(tables), M.size), dtype=np.int64)
    for n in range(M.size):
        cols = (np.asarray(M.table)[n][:, None] * na + np.arange(na)[None, :]).reshape(-1)
        moved = tables[:, cols] if na else tables
        for i in range(len(tables)):
            act[i, n] = lookup[np.ascontiguousarray(moved[i]).tobytes()]
    labels = [f"{label}{i}" for i in range(len(tables))]
    X = MSet(M, labels, act)
    P, _, _ = product(X, A)
    ev = tables[:, M.identity * na: (M.identity + 1) * na].reshape(-1) if na else np.zeros(0, dtype=np.int64)
    evmap = EquivariantMap(P, B, ev)
    return ExponentialObject(X, A, B, shape, tables, P, evmap, lookup)


def power_object(A: MSet) -> ExponentialObject:
    """``Omega^A``."""
    return exponential(A, omega(A.monoid).as_mset)


def _split_product(P: MSet, C: MSet, A: MSet):
    expected, _, _ = product(C, A)
    if P != expected:
        raise ShapeMismatch("domain is not the product presentation of C and A")


def transpose(g: EquivariantMap, C: MSet, exp: ExponentialObject) -> EquivariantMap:
    """``g: C x A -> B`` to ``C -> B^A`` with ``c -> ((m, a) -> g(c.m, a))``."""
    A, B = exp.base, exp.target
    _split_product(g.dom, C, A)
    if g.cod != B:
        raise ShapeMismatch("codomain does not match the exponential's target")
    M = C.monoid
    na = A.size
    mapping = []
    for c in range(C.size):
        row = np.empty(M.size * na, dtype=np.int64)
        for m in range(M.size):
            cm = int(C.action[c, m])
            row[m * na: (m + 1) * na] = g.mapping[cm * na: (cm + 1) * na]
        mapping.append(exp.index_of(row))
    return EquivariantMap(C, exp.as_mset, mapping)


def untranspose(h: EquivariantMap, exp: ExponentialObject) -> EquivariantMap:
    """``h: C -> B^A`` to ``C x A -> B`` with ``(c, a) -> h(c)(1, a)``."""
    if h.cod != exp.as_mset:
        raise ShapeMismatch("codomain is not the given exponential")
    C, A = h.dom, exp.base
    P, _, _ = product(C, A)
    u = C.monoid.identity
    na = A.size
    mapping = [exp.apply(h(c), u, a) for c in range(C.size) for a in range(na)]
    return EquivariantMap(P, exp.target, mapping)


def singleton_table(A: MSet, a: int) -> np.ndarray:
    """The map ``(m, a') -> {n : a.(m*n) = a'.n}`` as Omega indices."""
    M = A.monoid
    Om = omega(M)
    lookup = Om.lookup
    na = A.size
    row = np.empty(M.size * na, dtype=np.int64)
    for m in range(M.size):
        for a2 in range(na):
            ideal = frozenset(n for n in range(M.size)
                              if int(A.action[a, M.table[m, n]]) == int(A.action[a2, n]))
            row[m * na + a2] = lookup[ideal]
    return row


def singleton(A: MSet, exp: ExponentialObject | None = None) -> EquivariantMap:
    """The monic ``A -> Omega^A`` sending ``a`` to its characteristic
    family of equalities."""
    if exp is None:
        exp = power_object(A)
    elif exp.base != A or exp.target != omega(A.monoid).as_mset:
        raise ShapeMismatch("exponential is not Omega^A")
    mapping = [exp.index_of(singleton_table(A, a)) for a in range(A.size)]
    return EquivariantMap(A, exp.as_mset, mapping)
