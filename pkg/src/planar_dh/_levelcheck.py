"""Lean yes/no versions of the rooted conditions, run at every recursion level.

They read the mutable accumulator directly.  On failure the callers rebuild
the full report from :mod:`planar_dh.verify` for the error message, so the
two must agree; a property test holds them to that.
"""


def _core_ok(adj, out, h):
    """Exact partition of the edges of ``adj`` into arcs and hedges, with acyclic arcs."""
    m2 = 0
    for nb in adj.values():
        m2 += len(nb)
    items = sum(map(len, out.values())) + sum(map(len, h.values())) // 2
    # m items covering all m edges leaves no room for a double cover or a stray item
    if 2 * items != m2:
        return False
    empty = ()
    for v, nb in adj.items():
        ov = out.get(v, empty)
        hv = h.get(v, empty)
        for u in nb:
            if u not in ov and u not in hv and v not in out.get(u, empty):
                return False
    indeg = {}
    for s in out.values():
        for u in s:
            indeg[u] = indeg.get(u, 0) + 1
    stack = [v for v in adj if v not in indeg]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for u in out.get(v, ()):
            indeg[u] -= 1
            if not indeg[u]:
                stack.append(u)
    return seen == len(adj)


def ok26(adj, cycle, x, y, z, acc):
    out, h = acc.out, acc.h
    if not _core_ok(adj, out, h):
        return False
    od = lambda v: len(out.get(v, ()))
    hd = lambda v: len(h.get(v, ()))
    k = len(cycle)
    pos = {v: i for i, v in enumerate(cycle)}

    def nbrs(w):
        i = pos[w]
        return cycle[i - 1], cycle[(i + 1) % k]

    def b(w):
        return sum(1 for r in nbrs(w) if r in (x, y))

    for v in adj:
        if v in pos:
            if od(v) > 1 or hd(v) > 5 - b(v):
                return False
        elif od(v) > 2 or hd(v) > 6:
            return False
    if od(y) or hd(y) or out.get(x, set()) != {y} or hd(x) > 1:
        return False
    if hd(x) == 1:
        (s,) = h[x]
        if s not in pos or s not in adj[y]:
            return False
    bz = b(z)
    if hd(z) > 4 - bz:
        return False
    z1, z2 = nbrs(z)
    if hd(z) == 4 - bz and any(hd(w) > 4 - b(w) for w in (z1, z2)):
        return False
    return hd(z) + hd(z1) + hd(z2) <= 12 - b(z1) - b(z2)


def ok32(adj, cycle, x, y, z, zp, acc):
    out, h = acc.out, acc.h
    if not _core_ok(adj, out, h):
        return False
    od = lambda v: len(out.get(v, ()))
    hd = lambda v: len(h.get(v, ()))
    pos = set(cycle)
    for v in adj:
        if v in pos:
            if od(v) > 2 or hd(v) > 2 or (v != zp and od(v) + hd(v) > 3):
                return False
        elif od(v) > 3 or hd(v) > 2:
            return False
    if od(y) or hd(x) or hd(y) or out.get(x, set()) != {y}:
        return False
    return od(z) + hd(z) <= 2
