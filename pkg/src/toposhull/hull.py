"""Essential extensions, injectivity, and injective hulls.

A monic ``e: A -> B`` is essential iff every non-trivial quotient of ``B``
collapses two points of the image of ``A``. Every non-trivial congruence
contains a principal one, so it suffices to look at the principal
congruences of the ``|B|(|B|-1)/2`` pairs; :func:`is_essential_bruteforce`
walks all congruences instead and serves as its oracle.

Two hull constructions are provided and cross-checked:

* subobject growth: inside the injective ``Omega^A``, grow the image of the
  singleton embedding one orbit at a time while it stays essential;
* quotient chain: starting from ``Omega^A`` itself, keep dividing out a
  principal congruence that leaves ``A`` embedded until none is left.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _kernels
from .errors import InternalInconsistency, NotMonic, PreconditionFailed
from .locally_finite import monic_endo_inverse
from .mset import (
    Congruence,
    EquivariantMap,
    MSet,
    SubMSet,
    coequalizer,
    compose,
    corestrict,
    enumerate_congruences,
    extend_partial,
    identity,
    is_iso,
    is_monic,
    principal_congruence,
)
from .topos import ExponentialObject, power_object, singleton


@dataclass(eq=False)
class EssentialResult:
    essential: bool
    pair: tuple[int, int] | None = None
    congruence: Congruence | None = None
    projection: EquivariantMap | None = None

    def __bool__(self):
        return self.essential


def _image_mask(e: EquivariantMap) -> np.ndarray:
    mask = np.zeros(e.cod.size, dtype=np.bool_)
    mask[e.mapping] = True
    return mask


def is_essential(e: EquivariantMap) -> EssentialResult:
    """Essentiality of a monic via principal congruences.

    When ``e`` is not essential the result carries the first offending pair
    ``(b, b')`` and the quotient ``g`` by its principal congruence: ``g`` is
    a proper epi with ``g . e`` still monic.
    """
    if not is_monic(e):
        raise NotMonic("e")
    b, b2 = _kernels.first_collapsible_pair(np.ascontiguousarray(e.cod.action), _image_mask(e))
    if b < 0:
        return EssentialResult(True)
    theta = principal_congruence(e.cod, int(b), int(b2))
    _, proj = coequalizer(theta)
    return EssentialResult(False, (int(b), int(b2)), theta, proj)


def is_essential_bruteforce(e: EquivariantMap) -> bool:
    """Definitional check: every quotient ``g`` of the codomain with ``g . e``
    monic must be an isomorphism."""
    if not is_monic(e):
        raise NotMonic("e")
    image = e.mapping.tolist()
    for theta in enumerate_congruences(e.cod):
        if theta.is_discrete():
            continue
        if len({theta.partition[y] for y in image}) == len(image):
            return False
    return True


def extend_along_monic(m: EquivariantMap, f: EquivariantMap) -> EquivariantMap | None:
    """Some ``g`` with ``g . m = f``, or ``None`` if no extension exists."""
    if not is_monic(m):
        raise NotMonic("m")
    if m.dom != f.dom:
        raise PreconditionFailed("m and f must share their domain")
    partial = {int(m.mapping[a]): int(f.mapping[a]) for a in range(m.dom.size)}
    g = extend_partial(m.cod, f.cod, partial)
    if g is not None and compose(g, m) != f:
        raise InternalInconsistency("extension search returned a map that does not extend f")
    return g


def _restricted_table(X: MSet, members) -> tuple[np.ndarray, np.ndarray]:
    idx = np.asarray(sorted(members), dtype=np.int64)
    pos = np.full(X.size, -1, dtype=np.int64)
    pos[idx] = np.arange(len(idx))
    return np.ascontiguousarray(pos[X.action[idx]]), pos


def _essential_inside(W: MSet, members, image: np.ndarray) -> bool:
    table, pos = _restricted_table(W, members)
    mask = np.zeros(len(table), dtype=np.bool_)
    mask[pos[image]] = True
    b, _ = _kernels.first_collapsible_pair(table, mask)
    return b < 0


def _grow(W: MSet, image: np.ndarray, first_only: bool = False) -> tuple[set[int], list[int]]:
    """Greedy maximal essential extension of ``image`` inside ``W``.

    A candidate rejected once stays rejected: essential extensions are
    closed downwards, so a larger base cannot rescue it.
    """
    current = set(int(x) for x in image)
    rejected: set[int] = set()
    added: list[int] = []
    while True:
        grew = False
        for w in range(W.size):
            if w in current or w in rejected:
                continue
            cand = current | W.orbit(w)
            if _essential_inside(W, cand, image):
                current = cand
                added.append(w)
                grew = True
                break
            rejected.add(w)
        if not grew or first_only:
            return current, added


@dataclass(eq=False)
class InjectivityResult:
    injective: bool
    power: ExponentialObject
    singleton: EquivariantMap
    retraction: EquivariantMap | None = None
    extension: EquivariantMap | None = None

    def __bool__(self):
        return self.injective


def is_injective(A: MSet, power: ExponentialObject | None = None) -> InjectivityResult:
    """Decide injectivity of ``A`` two ways and insist they agree.

    ``A`` is injective iff the singleton embedding ``A -> Omega^A`` has no
    proper essential enlargement inside ``Omega^A``, iff it has a
    retraction. The first gives the answer (and, when negative, the
    essential extension as witness); the second is searched for as the
    positive witness. When negative, the missing retraction is certified
    on the small essential extension, since any retraction of
    ``Omega^A`` would restrict to one there.
    """
    W = power if power is not None else power_object(A)
    s = singleton(A, W)
    grown, _ = _grow(W.as_mset, s.mapping, first_only=True)
    if len(grown) == A.size:
        r = extend_along_monic(s, identity(A))
        if r is None:
            raise InternalInconsistency("no essential enlargement, yet no retraction from Omega^A")
        return InjectivityResult(True, W, s, retraction=r)
    S = SubMSet(W.as_mset, grown)
    ext = corestrict(s, S)
    if extend_along_monic(ext, identity(A)) is not None:
        raise InternalInconsistency("proper essential extension admits a retraction")
    return InjectivityResult(False, W, s, extension=ext)


@dataclass(eq=False)
class HullCertificate:
    base: MSet
    hull: MSet
    embedding: EquivariantMap
    method: str
    essential_witnesses: dict[tuple[int, int], tuple[int, int]]
    injectivity_witness: InjectivityResult | None
    power: ExponentialObject
    steps: list = field(default_factory=list)
    step_bound: int = 0

    @property
    def step_count(self) -> int:
        return len(self.steps)


def _essential_witnesses(e: EquivariantMap) -> dict[tuple[int, int], tuple[int, int]]:
    """For each hull pair, the two base elements its principal congruence
    glues together."""
    E = e.cod
    rows = _kernels.pair_witnesses(np.ascontiguousarray(E.action), _image_mask(e))
    back = {int(y): a for a, y in enumerate(e.mapping)}
    out = {}
    r = 0
    for b in range(E.size):
        for b2 in range(b + 1, E.size):
            u, v = int(rows[r, 0]), int(rows[r, 1])
            if u < 0:
                raise InternalInconsistency(
                    f"hull pair ({E.elements[b]}, {E.elements[b2]}) collapses no base elements")
            out[(b, b2)] = tuple(sorted((back[u], back[v])))
            r += 1
    return out


def _certify(A, E, emb, method, W, steps, bound, verify) -> HullCertificate:
    if not is_monic(emb):
        raise InternalInconsistency(f"{method} hull embedding is not monic")
    witnesses = _essential_witnesses(emb)
    inj = None
    if verify:
        inj = is_injective(E)
        if not inj:
            raise InternalInconsistency(f"{method} hull is not injective")
    return HullCertificate(A, E, emb, method, witnesses, inj, W, steps, bound)


def injective_hull_subobject(A: MSet, verify: bool = True) -> HullCertificate:
    """Maximal essential extension of ``A`` inside ``Omega^A``."""
    W = power_object(A)
    s = singleton(A, W)
    members, added = _grow(W.as_mset, s.mapping)
    S = SubMSet(W.as_mset, members)
    emb = corestrict(s, S)
    return _certify(A, S.as_mset(), emb, "subobject", W, added, W.as_mset.size - 1, verify)


def injective_hull_quotient(A: MSet, verify: bool = True, cross_check: bool = True) -> HullCertificate:
    """Divide ``Omega^A`` by principal congruences that keep ``A`` embedded.

    Each step is a proper epi, so there are at most ``|Omega^A| - 1`` of
    them; the final embedding is essential because no admissible pair is
    left.
    """
    W = power_object(A)
    s = singleton(A, W)
    # work on raw tables; each quotient keeps the first member of every block,
    # exactly as coequalizer(..., labels="representative") would
    act = np.ascontiguousarray(W.as_mset.action)
    names = np.arange(W.as_mset.size)
    emb = s.mapping.copy()
    steps: list[tuple[str, str]] = []
    bound = W.as_mset.size - 1
    wl = W.as_mset.elements
    while True:
        mask = np.zeros(len(act), dtype=np.bool_)
        mask[emb] = True
        b, b2 = _kernels.first_collapsible_pair(act, mask)
        if b < 0:
            break
        labels = _kernels.congruence_closure(act, np.array([[b, b2]], dtype=np.int64))
        _, reps = np.unique(labels, return_index=True)
        act = np.ascontiguousarray(labels[act[reps]])
        emb = labels[emb]
        steps.append((wl[names[b]], wl[names[b2]]))
        names = names[reps]
        if len(np.unique(emb)) != A.size:
            raise InternalInconsistency("quotient step broke the embedding")
        if len(steps) > bound:
            raise InternalInconsistency(f"quotient chain exceeded {bound} proper epis")
    cur = MSet(A.monoid, [wl[i] for i in names], act)
    e = EquivariantMap(A, cur, emb, check=False)
    cert = _certify(A, cur, e, "quotient", W, steps, bound, verify)
    if cross_check:
        other = injective_hull_subobject(A, verify=False)
        try:
            hull_uniqueness_iso(other.embedding, cert.embedding, check_preconditions=False)
        except PreconditionFailed as exc:
            raise InternalInconsistency(f"hull methods disagree: {exc}") from exc
    return cert


class UniquenessIso(NamedTuple):
    iso: EquivariantMap
    inverse: EquivariantMap


def hull_uniqueness_iso(e: EquivariantMap, f: EquivariantMap,
                        check_preconditions: bool = True) -> UniquenessIso:
    """The isomorphism ``h: E -> F`` with ``h . e = f`` between two hulls.

    ``h`` extends ``f`` along ``e`` and is monic because ``e`` is essential;
    a second extension ``k`` the other way makes ``k h`` and ``h k`` monic
    endomorphisms, whose power inverses give the two-sided inverse of ``h``.
    """
    if e.dom != f.dom:
        raise PreconditionFailed("e and f have different domains")
    for name, g in (("e", e), ("f", f)):
        if not is_monic(g):
            raise PreconditionFailed(f"{name} monic")
    if check_preconditions:
        for name, g in (("e", e), ("f", f)):
            if not is_essential(g):
                raise PreconditionFailed(f"{name} essential")
            if not is_injective(g.cod):
                raise PreconditionFailed(f"codomain of {name} injective")
    h = extend_along_monic(e, f)
    if h is None:
        raise PreconditionFailed("codomain of f injective (f does not extend along e)")
    k = extend_along_monic(f, e)
    if k is None:
        raise PreconditionFailed("codomain of e injective (e does not extend along f)")
    if not is_monic(h) or not is_monic(k):
        raise PreconditionFailed("e and f essential (an extension is not monic)")
    left = compose(monic_endo_inverse(compose(k, h)), k)
    right = compose(k, monic_endo_inverse(compose(h, k)))
    if left != right or compose(left, h) != identity(e.cod) or compose(h, left) != identity(f.cod):
        raise InternalInconsistency("uniqueness isomorphism has no two-sided inverse")
    if compose(h, e) != f or not is_iso(h):
        raise InternalInconsistency("uniqueness isomorphism does not commute with the embeddings")
    return UniquenessIso(h, left)
