"""The category of finite right M-sets.

Objects are :class:`MSet` (a carrier with ``action[x, m] = x.m``), arrows are
:class:`EquivariantMap`. Equality of objects is equality of presentation;
use :func:`find_isomorphism` to compare up to isomorphism.
"""
from __future__ import annotations

from collections import Counter
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from ._config import max_frontier
from .errors import (
    ActionLawViolation,
    DomainMismatch,
    IndexOutOfRange,
    NotClosed,
    NotCompatible,
    NotEquivariant,
    SameElement,
    SizeGuardExceeded,
    UnitLawViolation,
    ValidationError,
)
from .monoid import FiniteMonoid


def _frozen(arr, shape) -> np.ndarray:
    a = np.array(arr, dtype=np.int64).reshape(shape)
    a.setflags(write=False)
    return a


class MSet:
    __slots__ = ("monoid", "elements", "action", "_key", "_index")

    def __init__(self, monoid: FiniteMonoid, elements: Sequence[str], action):
        elements = tuple(str(e) for e in elements)
        n, k = len(elements), monoid.size
        if len(set(elements)) != n:
            raise ValidationError(f"duplicate element labels in {elements}")
        try:
            act = np.array(action, dtype=np.int64)
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"malformed action table: {exc}") from None
        if n == 0:
            act = act.reshape(0, k)
        if act.shape != (n, k):
            raise ValidationError(f"action table shape {act.shape}, expected {(n, k)}")
        if n:
            bad = np.argwhere((act < 0) | (act >= n))
            if len(bad):
                x, m = bad[0]
                raise IndexOutOfRange(f"{elements[x]}.{monoid.elements[m]} = {act[x, m]} is not an element index")
            bad = np.flatnonzero(act[:, monoid.identity] != np.arange(n))
            if len(bad):
                raise UnitLawViolation(elements[bad[0]])
            # (x.m).n against x.(m*n), indexed [x, m, n]
            bad = np.argwhere(act[act] != act[:, monoid.table])
            if len(bad):
                x, m, q = bad[0]
                raise ActionLawViolation(elements[x], monoid.elements[m], monoid.elements[q])
        act.setflags(write=False)
        self.monoid = monoid
        self.elements = elements
        self.action = act
        self._key = (monoid, elements, act.tobytes())
        self._index = {e: i for i, e in enumerate(elements)}

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def act(self, x: int, m: int) -> int:
        return int(self.action[x, m])

    def index(self, label: str) -> int:
        return self._index[label]

    def orbit(self, x: int) -> frozenset:
        return frozenset(int(v) for v in self.action[x])

    def __eq__(self, other):
        if not isinstance(other, MSet):
            return NotImplemented
        return self is other or self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"MSet({list(self.elements)})"


def validate_mset(monoid: FiniteMonoid, elements, action) -> MSet:
    return MSet(monoid, elements, action)


class EquivariantMap:
    __slots__ = ("dom", "cod", "mapping", "_key")

    def __init__(self, dom: MSet, cod: MSet, mapping, check: bool = True):
        if dom.monoid != cod.monoid:
            raise DomainMismatch("maps must stay over one monoid")
        arr = np.array(mapping, dtype=np.int64).reshape(dom.size)
        if check:
            if dom.size and (arr.min() < 0 or arr.max() >= cod.size):
                raise IndexOutOfRange(f"mapping {arr.tolist()} leaves the codomain")
            bad = np.argwhere(arr[dom.action] != cod.action[arr]) if dom.size else ()
            if len(bad):
                x, m = bad[0]
                raise NotEquivariant(dom.elements[x], dom.monoid.elements[m])
        arr.setflags(write=False)
        self.dom = dom
        self.cod = cod
        self.mapping = arr
        self._key = (dom, cod, arr.tobytes())

    def __call__(self, x: int) -> int:
        return int(self.mapping[x])

    def table(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.mapping)

    def __eq__(self, other):
        if not isinstance(other, EquivariantMap):
            return NotImplemented
        return self is other or self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        pairs = ", ".join(f"{self.dom.elements[i]}->{self.cod.elements[j]}" for i, j in enumerate(self.mapping))
        return f"EquivariantMap({pairs})"


class SubMSet:
    """An action-closed subset ``members`` of ``parent``."""

    __slots__ = ("parent", "members", "_object")

    def __init__(self, parent: MSet, members: Iterable[int]):
        members = frozenset(int(x) for x in members)
        for x in members:
            if not 0 <= x < parent.size:
                raise IndexOutOfRange(f"{x} is not an element index")
            for m in range(parent.monoid.size):
                if int(parent.action[x, m]) not in members:
                    raise NotClosed(f"{parent.elements[x]}.{parent.monoid.elements[m]} leaves the subset")
        self.parent = parent
        self.members = members
        self._object = None

    def sorted_members(self) -> list[int]:
        return sorted(self.members)

    def as_mset(self) -> MSet:
        """The subset as an M-set in its own right, labels and order kept."""
        if self._object is None:
            idx = self.sorted_members()
            pos = {x: i for i, x in enumerate(idx)}
            act = [[pos[int(v)] for v in self.parent.action[x]] for x in idx]
            self._object = MSet(self.parent.monoid, [self.parent.elements[x] for x in idx],
                                act if idx else np.zeros((0, self.parent.monoid.size)))
        return self._object

    def sort_key(self):
        return (len(self.members), tuple(sorted(self.members)))

    def __eq__(self, other):
        if not isinstance(other, SubMSet):
            return NotImplemented
        return self.parent == other.parent and self.members == other.members

    def __hash__(self):
        return hash((self.parent, self.members))

    def __repr__(self):
        return "SubMSet{" + ", ".join(self.parent.elements[x] for x in self.sorted_members()) + "}"


def _canonical_labels(labels) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(int(b), len(seen)) for b in labels)


class Congruence:
    """Action-compatible partition; ``partition[x]`` is the block id of ``x``.

    Block ids are renumbered by first occurrence, so equal relations have
    equal presentations.
    """

    __slots__ = ("parent", "partition")

    def __init__(self, parent: MSet, partition: Sequence[int], check: bool = True):
        if len(partition) != parent.size:
            raise ValidationError("partition length does not match the carrier")
        part = _canonical_labels(partition)
        if check and parent.size:
            arr = np.asarray(part, dtype=np.int64)
            blocks_img = arr[parent.action]
            for m in range(parent.monoid.size):
                col = blocks_img[:, m]
                first: dict[int, int] = {}
                for x in range(parent.size):
                    b = part[x]
                    if first.setdefault(b, int(col[x])) != int(col[x]):
                        raise NotCompatible(
                            f"{parent.elements[x]} is related to another element but their "
                            f"images under {parent.monoid.elements[m]} are not")
        self.parent = parent
        self.partition = part

    @property
    def num_blocks(self) -> int:
        return max(self.partition) + 1 if self.partition else 0

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for x, b in enumerate(self.partition):
            out[b].append(x)
        return out

    def related(self, x: int, y: int) -> bool:
        return self.partition[x] == self.partition[y]

    def is_discrete(self) -> bool:
        return self.num_blocks == self.parent.size

    def refines(self, other: "Congruence") -> bool:
        """Every block of ``self`` sits inside a block of ``other``."""
        return all(other.related(b[0], y) for b in self.blocks() for y in b)

    def __eq__(self, other):
        if not isinstance(other, Congruence):
            return NotImplemented
        return self.parent == other.parent and self.partition == other.partition

    def __hash__(self):
        return hash((self.parent, self.partition))

    def __repr__(self):
        blocks = ["{" + ",".join(self.parent.elements[x] for x in b) + "}" for b in self.blocks()]
        return "Congruence(" + " ".join(blocks) + ")"


# ---------------------------------------------------------------- constructors

def regular(M: FiniteMonoid) -> MSet:
    """``M`` acting on itself by right multiplication."""
    return MSet(M, M.elements, M.table)


def terminal(M: FiniteMonoid) -> MSet:
    return MSet(M, ["*"], [[0] * M.size])


def empty(M: FiniteMonoid) -> MSet:
    return MSet(M, [], np.zeros((0, M.size), dtype=np.int64))


def trivial_action(M: FiniteMonoid, elements: Sequence[str]) -> MSet:
    """Every monoid element acts as the identity."""
    return MSet(M, elements, [[i] * M.size for i in range(len(elements))])


def coproduct(A: MSet, B: MSet, tags: tuple[str, str] = ("0", "1")) -> MSet:
    if A.monoid != B.monoid:
        raise DomainMismatch("coproduct of M-sets over different monoids")
    labels = [f"{tags[0]}:{e}" for e in A.elements] + [f"{tags[1]}:{e}" for e in B.elements]
    act = np.vstack([A.action, B.action + A.size])
    return MSet(A.monoid, labels, act)


def relabel(A: MSet, perm: Sequence[int], labels: Sequence[str] | None = None) -> tuple[MSet, EquivariantMap]:
    """Re-present ``A`` with old element ``x`` at position ``perm[x]``.

    Returns the new object and the isomorphism ``A -> new``.
    """
    n = A.size
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(n)):
        raise ValidationError("relabel needs a permutation")
    inv = [0] * n
    for x, p in enumerate(perm):
        inv[p] = x
    if labels is None:
        labels = [A.elements[inv[i]] for i in range(n)]
    act = [[perm[int(A.action[inv[i], m])] for m in range(A.monoid.size)] for i in range(n)]
    B = MSet(A.monoid, labels, act if n else np.zeros((0, A.monoid.size)))
    return B, EquivariantMap(A, B, perm)


# ---------------------------------------------------------------- arrows

def identity(A: MSet) -> EquivariantMap:
    return EquivariantMap(A, A, np.arange(A.size), check=False)


def compose(g: EquivariantMap, f: EquivariantMap) -> EquivariantMap:
    """``g . f``; requires ``cod(f)`` and ``dom(g)`` to be the same presentation."""
    if f.cod != g.dom:
        raise DomainMismatch(f"cannot compose: cod(f)={f.cod!r} is not dom(g)={g.dom!r}")
    return EquivariantMap(f.dom, g.cod, g.mapping[f.mapping], check=False)


def is_monic(f: EquivariantMap) -> bool:
    return len(set(f.mapping.tolist())) == f.dom.size


def is_epic(f: EquivariantMap) -> bool:
    return len(set(f.mapping.tolist())) == f.cod.size


def is_iso(f: EquivariantMap) -> bool:
    return is_monic(f) and is_epic(f)


def inverse(f: EquivariantMap) -> EquivariantMap:
    """Inverse of a bijective equivariant map (validated for equivariance)."""
    if not is_iso(f):
        raise ValidationError("only bijections have inverses")
    inv = np.empty(f.cod.size, dtype=np.int64)
    inv[f.mapping] = np.arange(f.dom.size)
    return EquivariantMap(f.cod, f.dom, inv)


def _search(dom: MSet, cod: MSet, init=None, injective=False, max_results=0, what="hom"):
    if dom.monoid != cod.monoid:
        raise DomainMismatch("hom between M-sets over different monoids")
    limit = max_frontier()
    if init is None:
        init = np.full(dom.size, -1, dtype=np.int64)
    out, count, status = _kernels.enumerate_maps(
        np.ascontiguousarray(dom.action), np.ascontiguousarray(cod.action),
        np.asarray(init, dtype=np.int64), bool(injective), int(max_results), int(limit))
    if status == _kernels.STATUS_GUARD:
        raise SizeGuardExceeded(what, limit)
    return out[:count]


def hom_tables(A: MSet, B: MSet, injective: bool = False) -> np.ndarray:
    """All equivariant maps as rows of an ``(count, |A|)`` array, lexicographic."""
    return _search(A, B, injective=injective)


def hom(A: MSet, B: MSet) -> list[EquivariantMap]:
    """Every equivariant map ``A -> B`` in lexicographic order of tables."""
    return [EquivariantMap(A, B, row, check=False) for row in hom_tables(A, B)]


def monics(A: MSet, B: MSet) -> list[EquivariantMap]:
    return [EquivariantMap(A, B, row, check=False) for row in hom_tables(A, B, injective=True)]


def extend_partial(dom: MSet, cod: MSet, partial: dict[int, int]) -> EquivariantMap | None:
    """First equivariant map agreeing with ``partial``, if any."""
    init = np.full(dom.size, -1, dtype=np.int64)
    for x, y in partial.items():
        init[x] = y
    rows = _search(dom, cod, init=init, max_results=1, what="extension search")
    if not len(rows):
        return None
    return EquivariantMap(dom, cod, rows[0], check=False)


# ---------------------------------------------------------------- limits and colimits

def product(A: MSet, B: MSet) -> tuple[MSet, EquivariantMap, EquivariantMap]:
    """``A x B`` with the diagonal action, pairs in row-major order."""
    if A.monoid != B.monoid:
        raise DomainMismatch("product of M-sets over different monoids")
    nb = B.size
    labels = [f"({a},{b})" for a in A.elements for b in B.elements]
    act = (A.action[:, None, :] * nb + B.action[None, :, :]).reshape(A.size * nb, A.monoid.size)
    P = MSet(A.monoid, labels, act)
    idx = np.arange(A.size * nb)
    return P, EquivariantMap(P, A, idx // nb if nb else idx, check=False), \
        EquivariantMap(P, B, idx % nb if nb else idx, check=False)


def pair_index(A: MSet, B: MSet, a: int, b: int) -> int:
    """Position of ``(a, b)`` in ``product(A, B)``."""
    return a * B.size + b


def image(f: EquivariantMap) -> SubMSet:
    return SubMSet(f.cod, set(f.mapping.tolist()))


def corestrict(f: EquivariantMap, S: SubMSet) -> EquivariantMap:
    """``f`` viewed as a map into the subobject ``S`` containing its image."""
    if S.parent != f.cod:
        raise DomainMismatch("subobject is not of the codomain")
    pos = {x: i for i, x in enumerate(S.sorted_members())}
    try:
        mapping = [pos[int(y)] for y in f.mapping]
    except KeyError:
        raise DomainMismatch("image of f is not inside the subobject") from None
    return EquivariantMap(f.dom, S.as_mset(), mapping, check=False)


def epi_mono_factorize(f: EquivariantMap) -> tuple[EquivariantMap, EquivariantMap]:
    """``f = m . e`` through the set-image of ``f``."""
    S = image(f)
    return corestrict(f, S), include(S)


def kernel_pair(f: EquivariantMap) -> Congruence:
    return Congruence(f.dom, f.mapping.tolist(), check=False)


def coequalizer(theta: Congruence, labels: str = "members") -> tuple[MSet, EquivariantMap]:
    """Quotient of ``theta.parent`` by ``theta`` and the projection onto it.

    Blocks are labelled ``[a|b]`` (``labels="members"``, singletons keep their
    label) or by their first member (``labels="representative"``).
    """
    A = theta.parent
    blocks = theta.blocks()
    part = np.asarray(theta.partition, dtype=np.int64)
    reps = np.asarray([b[0] for b in blocks], dtype=np.int64)
    act = part[A.action[reps]] if len(reps) else np.zeros((0, A.monoid.size), dtype=np.int64)
    # well-definedness: every member of a block must land in the same blocks
    if A.size and not np.array_equal(part[A.action], act[part]):
        raise NotCompatible("partition is not a congruence")
    if labels == "representative":
        names = [A.elements[b[0]] for b in blocks]
    else:
        names = [A.elements[b[0]] if len(b) == 1 else "[" + "|".join(A.elements[x] for x in b) + "]"
                 for b in blocks]
    Q = MSet(A.monoid, names, act)
    return Q, EquivariantMap(A, Q, part, check=False)


def congruence_generated(B: MSet, pairs: Sequence[tuple[int, int]]) -> Congruence:
    arr = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    labels = _kernels.congruence_closure(np.ascontiguousarray(B.action), arr)
    return Congruence(B, labels.tolist(), check=False)


def principal_congruence(B: MSet, b: int, b2: int) -> Congruence:
    """The smallest congruence relating ``b`` and ``b2``."""
    if b == b2:
        raise SameElement(f"principal congruence needs two distinct elements, got {B.elements[b]} twice")
    return congruence_generated(B, [(b, b2)])


def enumerate_congruences(B: MSet) -> list[Congruence]:
    """All congruences, as restricted-growth partitions in lexicographic order.

    Backtracks over block assignments and prunes as soon as two related
    elements that are both assigned have images in different blocks.
    """
    n, k = B.size, B.monoid.size
    act = B.action.tolist()
    limit = max_frontier()
    nodes = 0
    out: list[Congruence] = []
    part = [-1] * n

    def consistent(i: int) -> bool:
        # only pairs involving i, or whose images involve i, can have changed
        for x in range(i + 1):
            for y in range(x + 1, i + 1):
                if part[x] != part[y]:
                    continue
                for m in range(k):
                    u, v = act[x][m], act[y][m]
                    if u <= i and v <= i and part[u] != part[v]:
                        return False
        return True

    def rec(i: int, nblocks: int):
        nonlocal nodes
        if i == n:
            out.append(Congruence(B, list(part), check=False))
            return
        for b in range(nblocks + 1):
            nodes += 1
            if nodes > limit:
                raise SizeGuardExceeded("enumerate_congruences", limit)
            part[i] = b
            if consistent(i):
                rec(i + 1, max(nblocks, b + 1))
        part[i] = -1

    rec(0, 0)
    return out


def orbit_invariants(A: MSet) -> tuple:
    """Isomorphism invariants: size, fixed-point count per monoid element,
    multiset of orbit sizes."""
    fixed = tuple(int(np.count_nonzero(A.action[:, m] == np.arange(A.size))) for m in range(A.monoid.size))
    orbits = tuple(sorted(Counter(len(A.orbit(x)) for x in range(A.size)).items()))
    return (A.size, fixed, orbits)


def find_isomorphism(A: MSet, B: MSet) -> EquivariantMap | None:
    """An equivariant bijection ``A -> B`` (inverse checked), or ``None``."""
    if A.monoid != B.monoid:
        raise DomainMismatch("isomorphism search across different monoids")
    if orbit_invariants(A) != orbit_invariants(B):
        return None
    rows = _search(A, B, injective=True, max_results=1, what="isomorphism search")
    if not len(rows):
        return None
    f = EquivariantMap(A, B, rows[0], check=False)
    inverse(f)  # validates that the inverse table is equivariant too
    return f


def quotients_up_to_iso(A: MSet) -> list[tuple[MSet, EquivariantMap]]:
    """One ``(Q, projection)`` per isomorphism class of epimorphic images."""
    reps: list[tuple[tuple, MSet, EquivariantMap]] = []
    for theta in enumerate_congruences(A):
        Q, proj = coequalizer(theta)
        inv = orbit_invariants(Q)
        if any(i == inv and find_isomorphism(Q, R) is not None for i, R, _ in reps):
            continue
        reps.append((inv, Q, proj))
    return [(Q, proj) for _, Q, proj in reps]


def sub_msets(X: MSet) -> list[SubMSet]:
    """All subobjects (unions of principal orbits), ordered by size then
    membership."""
    principal = {X.orbit(x) for x in range(X.size)}
    found = {frozenset()}
    frontier = [frozenset()]
    limit = max_frontier()
    while frontier:
        nxt = []
        for s in frontier:
            for p in principal:
                u = s | p
                if u not in found:
                    found.add(u)
                    nxt.append(u)
                    if len(found) > limit:
                        raise SizeGuardExceeded("sub_msets", limit)
        frontier = nxt
    subs = [SubMSet(X, s) for s in found]
    subs.sort(key=SubMSet.sort_key)
    return subs


def closure(X: MSet, members: Iterable[int]) -> SubMSet:
    """Smallest subobject containing ``members``."""
    out: set[int] = set()
    for x in members:
        out |= X.orbit(x)
    return SubMSet(X, out)


def include(S: SubMSet) -> EquivariantMap:
    return EquivariantMap(S.as_mset(), S.parent, S.sorted_members(), check=False)


def is_congruence(B: MSet, partition: Sequence[int]) -> bool:
    try:
        Congruence(B, partition)
    except NotCompatible:
        return False
    return True


def all_pairs(n: int):
    return combinations(range(n), 2)
