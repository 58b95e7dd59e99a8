"""Degeneracy tools and checkers for (d, h)-decompositions.

A decomposition is a pair ``(arcs, hedges)``: the arcs orient the
``d``-degenerate part, the hedges form the bounded-degree part.  Every
checker returns a :class:`ConditionReport` instead of raising, so callers can
inspect which condition failed and where.
"""
import heapq
from collections.abc import Mapping
from dataclasses import dataclass

from .errors import AcyclicityError, ContractError
from .plane import NearTriangulation, PlaneGraph


def _edge(u, v):
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class DecompPair:
    arcs: frozenset
    hedges: frozenset

    def __init__(self, arcs=(), hedges=()):
        object.__setattr__(self, "arcs", frozenset((u, v) for u, v in arcs))
        object.__setattr__(self, "hedges", frozenset(_edge(u, v) for u, v in hedges))

    def out_degree(self):
        deg = {}
        for u, _ in self.arcs:
            deg[u] = deg.get(u, 0) + 1
        return deg

    def h_degree(self):
        deg = {}
        for u, v in self.hedges:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        return deg

    def sorted_arcs(self):
        return sorted(self.arcs)

    def sorted_hedges(self):
        return sorted(self.hedges)

    def __repr__(self):
        return f"DecompPair(arcs={self.sorted_arcs()}, hedges={self.sorted_hedges()})"


@dataclass(frozen=True)
class DegeneracyOrdering:
    order: tuple

    def __post_init__(self):
        if len(set(self.order)) != len(self.order):
            raise ContractError("ordering repeats a vertex")

    @property
    def position(self):
        return {v: i for i, v in enumerate(self.order)}

    def __iter__(self):
        return iter(self.order)

    def __len__(self):
        return len(self.order)


@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool
    vertex: object = None
    detail: str = ""


@dataclass(frozen=True)
class ConditionReport:
    verdicts: tuple
    measured: Mapping = None

    @property
    def passed(self):
        return all(v.passed for v in self.verdicts)

    def __bool__(self):
        return self.passed

    def __getitem__(self, name):
        for v in self.verdicts:
            if v.name == name:
                return v
        raise KeyError(name)

    def failures(self):
        return [v for v in self.verdicts if not v.passed]

    def lines(self):
        out = []
        for v in self.verdicts:
            s = f"{v.name}: {'pass' if v.passed else 'FAIL'}"
            if not v.passed:
                s += f" at {v.vertex}" if v.vertex is not None else ""
                s += f" ({v.detail})" if v.detail else ""
            out.append(s)
        return out

    def as_dict(self):
        return {
            "passed": self.passed,
            "conditions": [
                {"name": v.name, "passed": v.passed, "vertex": v.vertex, "detail": v.detail}
                for v in self.verdicts
            ],
        }


def adjacency(g):
    """Neighbour sets of a PlaneGraph, NearTriangulation or plain mapping."""
    if isinstance(g, NearTriangulation):
        g = g.graph
    if isinstance(g, PlaneGraph):
        return g.adj
    if isinstance(g, Mapping):
        adj = {v: set(nb) for v, nb in g.items()}
        for v, nb in list(adj.items()):
            for u in nb:
                adj.setdefault(u, set()).add(v)
        return adj
    raise TypeError(f"not a graph: {type(g).__name__}")


def graph_edges(g):
    adj = adjacency(g)
    return {(u, v) for u, nb in adj.items() for v in nb if u < v}


def _peel(adj, d):
    """Min-degree peeling (ties to the smallest id); returns (removal order, residue)."""
    deg = {v: len(nb) for v, nb in adj.items()}
    heap = [(k, v) for v, k in deg.items()]
    heapq.heapify(heap)
    gone = set()
    order = []
    while heap:
        k, v = heapq.heappop(heap)
        if v in gone or k != deg[v]:
            continue
        if k > d:
            break
        gone.add(v)
        order.append(v)
        for u in adj[v]:
            if u not in gone:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    residue = {v for v in adj if v not in gone}
    return order, residue


def degeneracy_ordering(g, d):
    """A d-degenerate ordering of ``g``, or None when some subgraph has min degree > d."""
    order, residue = _peel(adjacency(g), d)
    if residue:
        return None
    return DegeneracyOrdering(tuple(reversed(order)))


def degeneracy_residue(g, d):
    """The largest subgraph of minimum degree > d (empty when g is d-degenerate)."""
    return _peel(adjacency(g), d)[1]


def degeneracy(g):
    adj = adjacency(g)
    deg = {v: len(nb) for v, nb in adj.items()}
    heap = [(k, v) for v, k in deg.items()]
    heapq.heapify(heap)
    gone = set()
    best = 0
    while heap:
        k, v = heapq.heappop(heap)
        if v in gone or k != deg[v]:
            continue
        best = max(best, k)
        gone.add(v)
        for u in adj[v]:
            if u not in gone:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    return best


def ordering_to_orientation(g, sigma):
    """Orient every edge from its later to its earlier endpoint."""
    adj = adjacency(g)
    order = sigma.order if isinstance(sigma, DegeneracyOrdering) else tuple(sigma)
    pos = {v: i for i, v in enumerate(order)}
    if len(pos) != len(order) or set(pos) != set(adj):
        raise ContractError("ordering is not a permutation of the vertex set")
    return frozenset((u, v) if pos[u] > pos[v] else (v, u) for u, v in graph_edges(adj))


def find_cycle(arcs):
    """Some directed cycle of ``arcs`` as a vertex list, or None."""
    out = {}
    for u, v in arcs:
        out.setdefault(u, []).append(v)
    for lst in out.values():
        lst.sort()
    colour = {}
    for s in sorted(out):
        if s in colour:
            continue
        stack = [(s, iter(out.get(s, ())))]
        path = [s]
        colour[s] = 1
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                colour[v] = 2
                stack.pop()
                path.pop()
                continue
            c = colour.get(nxt, 0)
            if c == 1:
                return path[path.index(nxt):]
            if c == 0:
                colour[nxt] = 1
                path.append(nxt)
                stack.append((nxt, iter(out.get(nxt, ()))))
    return None


def orientation_to_ordering(arcs, vertices=()):
    """An ordering in which every arc points from a later to an earlier vertex."""
    verts = set(vertices)
    succ = {}
    indeg = {}
    for u, v in arcs:
        verts.add(u)
        verts.add(v)
        # v must precede u
        succ.setdefault(v, []).append(u)
        indeg[u] = indeg.get(u, 0) + 1
    heap = [v for v in verts if indeg.get(v, 0) == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for u in succ.get(v, ()):
            indeg[u] -= 1
            if indeg[u] == 0:
                heapq.heappush(heap, u)
    if len(order) != len(verts):
        raise AcyclicityError(find_cycle(arcs))
    return DegeneracyOrdering(tuple(order))


def _partition_verdicts(edges, p):
    verdicts = []
    arc_edges = {}
    bad = None
    for u, v in p.arcs:
        e = _edge(u, v)
        if e in arc_edges and bad is None:
            bad = (e, "edge oriented both ways")
        arc_edges[e] = (u, v)
    if bad is None:
        for e in sorted(set(arc_edges) & p.hedges):
            bad = (e, "edge in both D and H")
            break
    if bad is None:
        covered = set(arc_edges) | p.hedges
        extra = sorted(covered - edges)
        missing = sorted(edges - covered)
        if extra:
            bad = (extra[0], "not an edge of the graph")
        elif missing:
            bad = (missing[0], "edge in neither D nor H")
    verdicts.append(Verdict("partition", bad is None, bad[0] if bad else None, bad[1] if bad else ""))
    cyc = find_cycle(p.arcs)
    verdicts.append(Verdict("acyclic", cyc is None, cyc[0] if cyc else None,
                            "cycle " + "->".join(map(str, cyc)) if cyc else ""))
    return verdicts


def _first(vertices, pred):
    for v in sorted(vertices):
        if not pred(v):
            return v
    return None


def check_dh(g, p, d, h):
    """Is ``p`` a (d, h)-decomposition of ``g``?"""
    adj = adjacency(g)
    edges = graph_edges(adj)
    outd = p.out_degree()
    hd = p.h_degree()
    verdicts = _partition_verdicts(edges, p)
    bad = _first(adj, lambda v: outd.get(v, 0) <= d)
    verdicts.append(Verdict("out-degree", bad is None, bad, f"deg+={outd.get(bad, 0)} > {d}" if bad is not None else ""))
    bad = _first(adj, lambda v: hd.get(v, 0) <= h)
    verdicts.append(Verdict("h-degree", bad is None, bad, f"degH={hd.get(bad, 0)} > {h}" if bad is not None else ""))
    measured = {"max_out_degree": max(outd.values(), default=0), "max_h_degree": max(hd.values(), default=0)}
    return ConditionReport(tuple(verdicts), measured)


def _root_check(t, ctx):
    if isinstance(t, NearTriangulation):
        if not (t.is_boundary(ctx.x) and t.is_boundary(ctx.y) and t.is_boundary(ctx.z)):
            raise ContractError("root vertices must lie on the boundary")


def conditions_26(adj, cycle, x, y, z, p):
    """Conditions (i)-(v) of a (2,6)-decomposition rooted at (x, y, z), on raw data."""
    k = len(cycle)
    pos = {v: i for i, v in enumerate(cycle)}

    def bnbrs(w):
        i = pos[w]
        return cycle[i - 1], cycle[(i + 1) % k]

    b = {w: sum(1 for r in bnbrs(w) if r in (x, y)) for w in cycle}
    outd = p.out_degree()
    hd = p.h_degree()
    od = lambda v: outd.get(v, 0)
    hdg = lambda v: hd.get(v, 0)
    verdicts = _partition_verdicts({(u, v) for u, nb in adj.items() for v in nb if u < v}, p)

    bad = _first((v for v in adj if v not in pos), lambda v: od(v) <= 2 and hdg(v) <= 6)
    verdicts.append(Verdict("(i)", bad is None, bad,
                            f"deg+={od(bad)} degH={hdg(bad)}" if bad is not None else ""))
    bad = _first(cycle, lambda v: od(v) <= 1 and hdg(v) <= 5 - b[v])
    verdicts.append(Verdict("(ii)", bad is None, bad,
                            f"deg+={od(bad)} degH={hdg(bad)} b={b[bad]}" if bad is not None else ""))

    xout = {v for u, v in p.arcs if u == x}
    why = ""
    if od(y) or hdg(y):
        why = f"y has deg+={od(y)} degH={hdg(y)}"
    elif xout != {y}:
        why = f"N+(x)={sorted(xout)}"
    elif hdg(x) > 1:
        why = f"degH(x)={hdg(x)}"
    elif hdg(x) == 1:
        (s,) = [v if u == x else u for u, v in p.hedges if x in (u, v)]
        if s not in pos or s not in adj[y]:
            why = f"H-neighbour {s} of x is not a boundary common neighbour of x and y"
    verdicts.append(Verdict("(iii)", not why, x if why else None, why))

    why = ""
    if hdg(z) > 4 - b[z]:
        why = f"degH(z)={hdg(z)} > {4 - b[z]}"
    elif hdg(z) == 4 - b[z]:
        for w in bnbrs(z):
            if hdg(w) > 4 - b[w]:
                why = f"degH(z) tight and degH({w})={hdg(w)} > {4 - b[w]}"
                break
    verdicts.append(Verdict("(iv)", not why, z if why else None, why))

    z1, z2 = bnbrs(z)
    total = hdg(z) + hdg(z1) + hdg(z2)
    bound = 12 - b[z1] - b[z2]
    verdicts.append(Verdict("(v)", total <= bound, None if total <= bound else z,
                            "" if total <= bound else f"sum {total} > {bound}"))
    measured = {"b": b, "deg_out": outd, "deg_h": hd}
    return ConditionReport(tuple(verdicts), measured)


def conditions_32(adj, cycle, x, y, z, z_prime, p):
    """Conditions (i)-(iii) of a (3,2)-decomposition rooted at (x, y, z[, z'])."""
    pos = set(cycle)
    outd = p.out_degree()
    hd = p.h_degree()
    od = lambda v: outd.get(v, 0)
    hdg = lambda v: hd.get(v, 0)
    verdicts = _partition_verdicts({(u, v) for u, nb in adj.items() for v in nb if u < v}, p)

    bad = _first((v for v in adj if v not in pos), lambda v: od(v) <= 3 and hdg(v) <= 2)
    verdicts.append(Verdict("(i)", bad is None, bad,
                            f"deg+={od(bad)} degH={hdg(bad)}" if bad is not None else ""))

    def ok_boundary(v):
        if od(v) > 2 or hdg(v) > 2:
            return False
        return v == z_prime or od(v) + hdg(v) <= 3

    bad = _first(cycle, ok_boundary)
    verdicts.append(Verdict("(ii)", bad is None, bad,
                            f"deg+={od(bad)} degH={hdg(bad)}" if bad is not None else ""))

    xout = {v for u, v in p.arcs if u == x}
    why = ""
    if od(y) or hdg(x) or hdg(y):
        why = f"deg+(y)={od(y)} degH(x)={hdg(x)} degH(y)={hdg(y)}"
    elif xout != {y}:
        why = f"N+(x)={sorted(xout)}"
    elif od(z) + hdg(z) > 2:
        why = f"deg+(z)+degH(z)={od(z) + hdg(z)} > 2"
    verdicts.append(Verdict("(iii)", not why, x if why else None, why))
    return ConditionReport(tuple(verdicts), {"deg_out": outd, "deg_h": hd})


def check_26(t, ctx, p):
    """Check a (2,6)-decomposition of near triangulation ``t`` rooted at ``ctx``."""
    _root_check(t, ctx)
    return conditions_26(t.graph.adj, t.outer, ctx.x, ctx.y, ctx.z, p)


def check_32(t, ctx, p):
    """Check a (3,2)-decomposition of ``t``; ``ctx.z_prime`` is the exempt vertex when z' is in play."""
    _root_check(t, ctx)
    nb = t.boundary_neighbors(ctx.z)
    z_prime = None if (ctx.x in nb or ctx.y in nb) else ctx.z_prime
    return conditions_32(t.graph.adj, t.outer, ctx.x, ctx.y, ctx.z, z_prime, p)


def restrict(p, target):
    """The part of ``p`` living on the edges of ``target``."""
    edges = graph_edges(target)
    return DecompPair(
        (a for a in p.arcs if _edge(*a) in edges),
        (e for e in p.hedges if e in edges),
    )


def infeasibility_bound_23(n):
    """True when the face-stellation counting bound rules out a (2,3)-decomposition."""
    if n < 3:
        raise ContractError("n must be at least 3")
    return 3 * n < 4 * n - 10
