"""Inverses of monic/epic endomorphisms and Schroeder-Bernstein witnesses.

All three rest on one fact about locally finite categories: the powers of
an endomorphism live in a finite hom-set, so ``f^(m+n+1) = f^m`` for some
``m, n``, and cancelling ``f^m`` leaves ``f^(n+1) = 1``.
"""
from __future__ import annotations

from typing import NamedTuple

from .errors import InternalInconsistency, NotEndo, NotEpic, NotMonic
from .mset import EquivariantMap, compose, identity, is_epic, is_monic


class EndoInverse(NamedTuple):
    inverse: EquivariantMap
    m: int
    n: int


def power_cycle(f: EquivariantMap) -> tuple[int, int, list[EquivariantMap]]:
    """First ``(m, n)`` with ``f^(m+n+1) = f^m``, plus the powers seen.

    Powers are keyed by their tables, so this costs at most ``|hom(A, A)|``
    compositions.
    """
    if f.dom != f.cod:
        raise NotEndo(f"{f!r} is not an endomorphism")
    seen: dict[bytes, int] = {}
    powers = [identity(f.dom)]
    while True:
        cur = powers[-1]
        key = cur.mapping.tobytes()
        if key in seen:
            m = seen[key]
            n = len(powers) - 1 - m - 1
            return m, n, powers
        seen[key] = len(powers) - 1
        powers.append(compose(f, cur))


def _endo_inverse(f: EquivariantMap) -> EndoInverse:
    m, n, powers = power_cycle(f)
    g = powers[n]
    one = identity(f.dom)
    if compose(g, f) != one or compose(f, g) != one:
        raise InternalInconsistency(f"f^{n} is not inverse to f although f^{m + n + 1} = f^{m}")
    return EndoInverse(g, m, n)


def monic_endo_inverse(f: EquivariantMap, with_exponents: bool = False):
    """Two-sided inverse of a monic endomorphism, as the power ``f^n``."""
    if f.dom != f.cod:
        raise NotEndo(f"{f!r} is not an endomorphism")
    if not is_monic(f):
        raise NotMonic("f")
    res = _endo_inverse(f)
    return res if with_exponents else res.inverse


def epic_endo_inverse(f: EquivariantMap, with_exponents: bool = False):
    """Two-sided inverse of an epic endomorphism (same power iteration; the
    cancellation is on the right)."""
    if f.dom != f.cod:
        raise NotEndo(f"{f!r} is not an endomorphism")
    if not is_epic(f):
        raise NotEpic("f")
    res = _endo_inverse(f)
    return res if with_exponents else res.inverse


def schroeder_bernstein(f: EquivariantMap, g: EquivariantMap) -> tuple[EquivariantMap, EquivariantMap]:
    """Given monics ``f: A -> B`` and ``g: B -> A``, return their inverses.

    ``h = (g f)^-1`` makes ``h g`` a left inverse of ``f``; ``k = (f g)^-1``
    makes ``k f`` a left inverse of ``g``. Both are checked two-sided.
    """
    if not is_monic(f):
        raise NotMonic("f")
    if not is_monic(g):
        raise NotMonic("g")
    h = monic_endo_inverse(compose(g, f))
    k = monic_endo_inverse(compose(f, g))
    f_inv = compose(h, g)
    g_inv = compose(k, f)
    A, B = f.dom, f.cod
    checks = {
        "f_inv.f": compose(f_inv, f) == identity(A),
        "f.f_inv": compose(f, f_inv) == identity(B),
        "g_inv.g": compose(g_inv, g) == identity(B),
        "g.g_inv": compose(g, g_inv) == identity(A),
    }
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        raise InternalInconsistency(f"Schroeder-Bernstein witnesses fail: {failed}")
    return f_inv, g_inv
