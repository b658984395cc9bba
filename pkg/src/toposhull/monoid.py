"""Finite monoids given by multiplication tables, and their right ideals."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from ._config import max_frontier
from .errors import BadIdentity, IndexOutOfRange, NotAssociative, SizeGuardExceeded, ValidationError


class FiniteMonoid:
    """A monoid on ``elements`` with ``table[i, j]`` the index of ``e_i * e_j``.

    Instances are validated on construction and immutable afterwards.
    Two monoids are equal when their presentations are identical.
    """

    __slots__ = ("elements", "table", "identity", "_key")

    def __init__(self, elements: Sequence[str], table, identity: int):
        elements = tuple(str(e) for e in elements)
        n = len(elements)
        if len(set(elements)) != n:
            raise ValidationError(f"duplicate element labels in {elements}")
        try:
            arr = np.array(table, dtype=np.int64)
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"malformed table: {exc}") from None
        if n == 0:
            raise ValidationError("a monoid needs at least its unit")
        if arr.shape != (n, n):
            raise ValidationError(f"table shape {arr.shape} does not match {n} elements")
        bad = np.argwhere((arr < 0) | (arr >= n))
        if len(bad):
            i, j = bad[0]
            raise IndexOutOfRange(f"table[{elements[i]}][{elements[j]}] = {arr[i, j]} is not an element index")
        if not 0 <= identity < n:
            raise IndexOutOfRange(f"identity index {identity} out of range")
        for x in range(n):
            if arr[identity, x] != x:
                raise BadIdentity(elements[x], f"{elements[identity]}*{elements[x]} = {elements[arr[identity, x]]}")
            if arr[x, identity] != x:
                raise BadIdentity(elements[x], f"{elements[x]}*{elements[identity]} = {elements[arr[x, identity]]}")
        # (x*y)*z against x*(y*z), indexed [x, y, z]
        bad = np.argwhere(arr[arr] != arr[:, arr])
        if len(bad):
            x, y, z = bad[0]
            raise NotAssociative(elements[x], elements[y], elements[z])
        arr.setflags(write=False)
        self.elements = elements
        self.table = arr
        self.identity = int(identity)
        self._key = (elements, arr.tobytes(), self.identity)

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def index(self, label: str) -> int:
        try:
            return self.elements.index(label)
        except ValueError:
            raise KeyError(label) from None

    def __eq__(self, other):
        if not isinstance(other, FiniteMonoid):
            return NotImplemented
        return self is other or self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"FiniteMonoid({list(self.elements)}, unit={self.elements[self.identity]})"


def validate_monoid(elements, mul_table, identity) -> FiniteMonoid:
    """Build a monoid, accepting the identity as an index or a label."""
    if isinstance(identity, str):
        labels = [str(e) for e in elements]
        if identity not in labels:
            raise IndexOutOfRange(f"identity {identity!r} is not an element")
        identity = labels.index(identity)
    return FiniteMonoid(elements, mul_table, int(identity))


class RightIdeal(frozenset):
    """Set of element indices closed under right multiplication."""

    def sort_key(self):
        return (len(self), tuple(sorted(self)))


def is_right_ideal(M: FiniteMonoid, members) -> bool:
    members = set(members)
    return all(int(M.table[i, m]) in members for i in members for m in range(M.size))


def right_ideals(M: FiniteMonoid) -> list[RightIdeal]:
    """All right ideals, sorted by size and then by sorted membership.

    Every right ideal is a union of principal ones ``iM``, so the search
    closes the empty ideal under unions with principal ideals.
    """
    principal = {frozenset(int(v) for v in M.table[i]) for i in range(M.size)}
    found = {frozenset()}
    frontier = [frozenset()]
    limit = max_frontier()
    while frontier:
        nxt = []
        for ideal in frontier:
            for p in principal:
                u = ideal | p
                if u not in found:
                    found.add(u)
                    nxt.append(u)
                    if len(found) > limit:
                        raise SizeGuardExceeded("right_ideals", limit)
        frontier = nxt
    return sorted((RightIdeal(s) for s in found), key=RightIdeal.sort_key)


def format_ideal(M: FiniteMonoid, ideal) -> str:
    return "{" + ",".join(M.elements[i] for i in sorted(ideal)) + "}"


# Standard small monoids used throughout the tests and the CLI examples.

def trivial_monoid() -> FiniteMonoid:
    return FiniteMonoid(["1"], [[0]], 0)


def idempotent_monoid() -> FiniteMonoid:
    """``{1, e}`` with ``e*e = e``."""
    return FiniteMonoid(["1", "e"], [[0, 1], [1, 1]], 0)


def cyclic_group(n: int) -> FiniteMonoid:
    labels = ["1"] + [f"g{i}" if i > 1 else "g" for i in range(1, n)]
    return FiniteMonoid(labels, [[(i + j) % n for j in range(n)] for i in range(n)], 0)


def right_zero_monoid() -> FiniteMonoid:
    """``{1, a, b}`` where ``a`` and ``b`` are right zeros: ``x*a = a``, ``x*b = b``."""
    return FiniteMonoid(["1", "a", "b"], [[0, 1, 2], [1, 1, 2], [2, 1, 2]], 0)


def opposite(M: FiniteMonoid) -> FiniteMonoid:
    """The opposite monoid; left actions of ``M`` are right actions of this."""
    return FiniteMonoid(M.elements, np.asarray(M.table).T, M.identity)
