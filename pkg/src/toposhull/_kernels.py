"""Integer-table kernels behind hom enumeration and congruence scans.

Each kernel is written once as ``py_<name>`` in the subset of Python that
numba compiles. The public ``<name>`` is the jitted version unless numba is
missing or ``TOPOSHULL_DISABLE_NUMBA=1`` is set, in which case it is the
plain function running on numpy arrays.

Tables are ``int64`` arrays: ``act[x, m]`` is ``x.m``.
"""
from __future__ import annotations

import numpy as np

from ._config import USE_NUMBA

STATUS_OK = 0
STATUS_GUARD = 1


def py_enumerate_maps(dom, cod, init, injective, max_results, max_nodes):
    """Depth-first search for equivariant maps ``dom -> cod`` extending ``init``.

    ``init[x] == -1`` marks unassigned elements. Choosing a value ``y`` for
    the first unassigned ``x`` fixes the whole orbit (``x.m -> y.m``), so the
    branch points are exactly the elements outside the orbits already fixed,
    and results come out in lexicographic order of their tables.

    Returns ``(maps, count, status)``; ``status == STATUS_GUARD`` when more
    than ``max_nodes`` candidate values were tried. ``max_results <= 0``
    means unlimited.
    """
    n = dom.shape[0]
    k = dom.shape[1]
    p = cod.shape[0]
    assign = init.copy()
    used = np.zeros(p + 1, np.int64)
    cap = 16
    out = np.empty((cap, n), np.int64)
    count = 0

    for x in range(n):
        y = assign[x]
        if y >= 0:
            for j in range(k):
                xj = dom[x, j]
                yj = cod[y, j]
                a = assign[xj]
                if a < 0:
                    assign[xj] = yj
                elif a != yj:
                    return out[:0], 0, STATUS_OK
    if injective:
        for x in range(n):
            if assign[x] >= 0:
                used[assign[x]] += 1
                if used[assign[x]] > 1:
                    return out[:0], 0, STATUS_OK

    x0 = -1
    for x in range(n):
        if assign[x] < 0:
            x0 = x
            break
    if x0 < 0:
        out[0] = assign
        return out[:1], 1, STATUS_OK

    trail = np.empty(n, np.int64)
    tlen = 0
    sx = np.empty(n + 1, np.int64)
    sy = np.empty(n + 1, np.int64)
    st = np.empty(n + 1, np.int64)
    depth = 0
    sx[0] = x0
    sy[0] = 0
    st[0] = 0
    nodes = 0
    while depth >= 0:
        x = sx[depth]
        while tlen > st[depth]:
            tlen -= 1
            z = trail[tlen]
            if injective:
                used[assign[z]] -= 1
            assign[z] = -1
        y = sy[depth]
        if y >= p:
            depth -= 1
            continue
        sy[depth] = y + 1
        nodes += 1
        if nodes > max_nodes:
            return out[:count], count, STATUS_GUARD
        ok = True
        for j in range(k):
            xj = dom[x, j]
            yj = cod[y, j]
            a = assign[xj]
            if a < 0:
                if injective and used[yj] > 0:
                    ok = False
                    break
                assign[xj] = yj
                trail[tlen] = xj
                tlen += 1
                if injective:
                    used[yj] += 1
            elif a != yj:
                ok = False
                break
        if not ok:
            continue
        nx = -1
        for z in range(x + 1, n):
            if assign[z] < 0:
                nx = z
                break
        if nx < 0:
            if count == cap:
                grown = np.empty((cap * 2, n), np.int64)
                grown[:cap] = out
                out = grown
                cap *= 2
            out[count] = assign
            count += 1
            if max_results > 0 and count >= max_results:
                return out[:count], count, STATUS_OK
            continue
        depth += 1
        sx[depth] = nx
        sy[depth] = 0
        st[depth] = tlen
    return out[:count], count, STATUS_OK


def py_congruence_closure(act, pairs):
    """Smallest congruence containing ``pairs`` (an ``(r, 2)`` array).

    Worklist union-find: merging ``x`` and ``y`` queues ``(x.m, y.m)`` for
    every ``m``. Returns block labels numbered by first occurrence.
    """
    n = act.shape[0]
    k = act.shape[1]
    parent = np.arange(n)
    size = pairs.shape[0] + n * k + 1
    qa = np.empty(size, np.int64)
    qb = np.empty(size, np.int64)
    tail = 0
    for i in range(pairs.shape[0]):
        qa[tail] = pairs[i, 0]
        qb[tail] = pairs[i, 1]
        tail += 1
    head = 0
    while head < tail:
        x = qa[head]
        y = qb[head]
        head += 1
        rx = x
        while parent[rx] != rx:
            parent[rx] = parent[parent[rx]]
            rx = parent[rx]
        ry = y
        while parent[ry] != ry:
            parent[ry] = parent[parent[ry]]
            ry = parent[ry]
        if rx == ry:
            continue
        if rx < ry:
            parent[ry] = rx
        else:
            parent[rx] = ry
        for j in range(k):
            qa[tail] = act[x, j]
            qb[tail] = act[y, j]
            tail += 1
    labels = np.empty(n, np.int64)
    root_label = np.full(n, -1, np.int64)
    nxt = 0
    for x in range(n):
        r = x
        while parent[r] != r:
            r = parent[r]
        if root_label[r] < 0:
            root_label[r] = nxt
            nxt += 1
        labels[x] = root_label[r]
    return labels


def py_first_collapsible_pair(act, in_image):
    """First pair ``b < b'`` whose principal congruence keeps the image apart.

    The principal congruence of ``(b, b')`` is the equivalence generated by
    ``(b.m, b'.m)`` for all ``m`` (that set is already action-closed), so
    only those ``2k`` elements can move. Returns ``(-1, -1)`` when every
    pair collapses two distinct image elements, i.e. the inclusion of the
    image is essential.
    """
    n = act.shape[0]
    k = act.shape[1]
    parent = np.arange(n)
    seen = np.full(n, -1, np.int64)
    touched = np.empty(2 * k, np.int64)
    for b in range(n):
        for b2 in range(b + 1, n):
            if in_image[b] and in_image[b2]:
                continue
            nt = 0
            for j in range(k):
                x = act[b, j]
                y = act[b2, j]
                touched[nt] = x
                touched[nt + 1] = y
                nt += 2
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                while parent[y] != y:
                    parent[y] = parent[parent[y]]
                    y = parent[y]
                if x < y:
                    parent[y] = x
                elif y < x:
                    parent[x] = y
            collapses = False
            for t in range(nt):
                z = touched[t]
                if in_image[z]:
                    r = z
                    while parent[r] != r:
                        r = parent[r]
                    if seen[r] < 0:
                        seen[r] = z
                    elif seen[r] != z:
                        collapses = True
            for t in range(nt):
                r = touched[t]
                while parent[r] != r:
                    r = parent[r]
                seen[r] = -1
            for t in range(nt):
                parent[touched[t]] = touched[t]
            if not collapses:
                return b, b2
    return -1, -1


def py_pair_witnesses(act, in_image):
    """For every pair ``b < b'`` (row-major), the smallest pair of distinct
    image elements its principal congruence identifies, or ``(-1, -1)``."""
    n = act.shape[0]
    k = act.shape[1]
    npairs = n * (n - 1) // 2
    out = np.full((npairs, 2), -1, np.int64)
    parent = np.arange(n)
    touched = np.empty(2 * k, np.int64)
    roots = np.empty(2 * k, np.int64)
    row = 0
    for b in range(n):
        for b2 in range(b + 1, n):
            nt = 0
            for j in range(k):
                x = act[b, j]
                y = act[b2, j]
                touched[nt] = x
                touched[nt + 1] = y
                nt += 2
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                while parent[y] != y:
                    parent[y] = parent[parent[y]]
                    y = parent[y]
                if x < y:
                    parent[y] = x
                elif y < x:
                    parent[x] = y
            for t in range(nt):
                r = touched[t]
                while parent[r] != r:
                    r = parent[r]
                roots[t] = r
            best0 = -1
            best1 = -1
            for s in range(nt):
                u = touched[s]
                if not in_image[u]:
                    continue
                for t in range(nt):
                    v = touched[t]
                    if v <= u or not in_image[v] or roots[s] != roots[t]:
                        continue
                    if best0 < 0 or u < best0 or (u == best0 and v < best1):
                        best0 = u
                        best1 = v
            out[row, 0] = best0
            out[row, 1] = best1
            for t in range(nt):
                parent[touched[t]] = touched[t]
            row += 1
    return out


if USE_NUMBA:
    from numba import njit

    _jit = njit(cache=True, nogil=True)
    enumerate_maps = _jit(py_enumerate_maps)
    congruence_closure = _jit(py_congruence_closure)
    first_collapsible_pair = _jit(py_first_collapsible_pair)
    pair_witnesses = _jit(py_pair_witnesses)
else:
    enumerate_maps = py_enumerate_maps
    congruence_closure = py_congruence_closure
    first_collapsible_pair = py_first_collapsible_pair
    pair_witnesses = py_pair_witnesses
