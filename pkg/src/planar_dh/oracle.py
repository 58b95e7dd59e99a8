"""Exact (d,h)-decomposability for small graphs by pruned backtracking.

Edges are assigned one at a time to H or D, H first.  Three prunes cut the
tree; each can be switched off to audit the others:

* ``caps``: an edge may enter H only while both ends have H-degree below h.
* ``count``: a d-degenerate graph on n vertices has at most d*n - d(d+1)/2
  edges, and every edge that cannot fit into H must end up in D.
* ``peel``: peel vertices whose D-degree is surely at most d; a non-empty
  residue means D cannot be d-degenerate.  The D-degree of v is bounded below
  by its D-edges plus the unassigned edges H has no room for.

For h = 1 a second search enumerates matchings directly; it is the default
there and reuses the peeling bound.  For h = 0 nothing can go to H and a
single degeneracy test settles the question.
"""
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import BudgetExceeded, ContractError
from .verify import DecompPair, adjacency, degeneracy_ordering, ordering_to_orientation

__all__ = ["MinH", "OracleResult", "Prunes", "exact_decide", "min_h"]

DEFAULT_NODE_BUDGET = 20_000_000


@dataclass(frozen=True)
class Prunes:
    caps: bool = True
    count: bool = True
    peel: bool = True


@dataclass(frozen=True)
class OracleResult:
    feasible: bool
    witness: DecompPair = None
    nodes: int = 0
    seconds: float = 0.0
    d: int = 0
    h: int = 0
    mode: str = "pruned"


@dataclass(frozen=True)
class MinH:
    h: int
    witness: DecompPair
    refutations: tuple = field(default=())


def _max_d_edges(n, d):
    if n <= d + 1:
        return n * (n - 1) // 2
    return d * n - d * (d + 1) // 2


class _Search:
    def __init__(self, verts, edges, d, h, prunes, node_budget):
        self.n = len(verts)
        self.verts = verts
        self.edges = edges
        self.d, self.h = d, h
        self.prunes = prunes
        self.budget = node_budget
        self.nodes = 0
        self.inc = [[] for _ in range(self.n)]
        for i, (a, b) in enumerate(edges):
            self.inc[a].append(i)
            self.inc[b].append(i)
        self.bound = _max_d_edges(self.n, d)

    def reset(self):
        n = self.n
        self.state = [None] * len(self.edges)  # None unassigned, True in H, False in D
        self.hdeg = [0] * n
        self.ddeg = [0] * n
        self.un = [len(self.inc[v]) for v in range(n)]
        self.nd = 0
        self.nh = 0

    def _set(self, i, in_h):
        a, b = self.edges[i]
        self.state[i] = in_h
        self.un[a] -= 1
        self.un[b] -= 1
        if in_h:
            self.hdeg[a] += 1
            self.hdeg[b] += 1
            self.nh += 1
        else:
            self.ddeg[a] += 1
            self.ddeg[b] += 1
            self.nd += 1

    def _unset(self, i):
        a, b = self.edges[i]
        in_h = self.state[i]
        self.state[i] = None
        self.un[a] += 1
        self.un[b] += 1
        if in_h:
            self.hdeg[a] -= 1
            self.hdeg[b] -= 1
            self.nh -= 1
        else:
            self.ddeg[a] -= 1
            self.ddeg[b] -= 1
            self.nd -= 1

    def _room(self, v):
        return self.h - self.hdeg[v]

    def _count_ok(self):
        unassigned = len(self.edges) - self.nd - self.nh
        cap = sum(max(0, self._room(v)) for v in range(self.n)) // 2
        return self.nd + max(0, unassigned - cap) <= self.bound

    def _peel_ok(self):
        d = self.d
        dd = self.ddeg[:]
        un = self.un[:]
        alive = [True] * self.n
        lb = lambda v: dd[v] + max(0, un[v] - self._room(v))
        stack = [v for v in range(self.n) if lb(v) <= d]
        left = self.n
        while stack:
            v = stack.pop()
            if not alive[v]:
                continue
            alive[v] = False
            left -= 1
            for i in self.inc[v]:
                a, b = self.edges[i]
                u = b if a == v else a
                if not alive[u]:
                    continue
                s = self.state[i]
                if s is True:
                    continue
                if s is False:
                    dd[u] -= 1
                else:
                    un[u] -= 1
                if lb(u) <= d:
                    stack.append(u)
        return left == 0

    def _ok(self):
        if self.prunes.count and not self._count_ok():
            return False
        if self.prunes.peel and not self._peel_ok():
            return False
        return True

    def _leaf_ok(self):
        # with every edge assigned the peeling bound is the true D-degree
        return all(x <= self.h for x in self.hdeg) and self._peel_ok()

    def _allowed_h(self, i):
        if not self.prunes.caps:
            return True
        a, b = self.edges[i]
        return self.hdeg[a] < self.h and self.hdeg[b] < self.h

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"node budget {self.budget} exhausted")

    def apply_prefix(self, prefix):
        self.reset()
        for i, in_h in enumerate(prefix):
            if in_h and not self._allowed_h(i):
                return False
            self._set(i, in_h)
        return self._ok()

    def dfs(self, i):
        self._tick()
        if i == len(self.edges):
            return self._leaf_ok()
        choices = (True, False) if self._allowed_h(i) else (False,)
        for in_h in choices:
            self._set(i, in_h)
            if self._ok() and self.dfs(i + 1):
                return True
            self._unset(i)
        return False

    def witness(self):
        adj = {v: set() for v in self.verts}
        hedges = []
        for (a, b), s in zip(self.edges, self.state):
            u, v = self.verts[a], self.verts[b]
            if s:
                hedges.append((u, v))
            else:
                adj[u].add(v)
                adj[v].add(u)
        sigma = degeneracy_ordering(adj, self.d)
        return DecompPair(ordering_to_orientation(adj, sigma), hedges)


class _Matchings:
    """Branch on vertices, matching each one to a free neighbour or leaving it single."""

    def __init__(self, verts, edges, d, budget):
        self.verts = verts
        self.n = len(verts)
        self.d = d
        self.budget = budget
        self.nodes = 0
        self.nbrs = [[] for _ in range(self.n)]
        for a, b in edges:
            self.nbrs[a].append(b)
            self.nbrs[b].append(a)
        deg = [len(nb) for nb in self.nbrs]
        self.order = sorted(range(self.n), key=lambda v: (-deg[v], v))
        self.mate = [None] * self.n  # None undecided, -1 single, else partner

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"node budget {self.budget} exhausted")

    def _peel_ok(self):
        # an undecided vertex can still lose one D-edge to H
        mate = self.mate
        cnt = [len(nb) - (1 if mate[v] is not None and mate[v] >= 0 else 0) for v, nb in enumerate(self.nbrs)]
        lb = lambda v: cnt[v] - (mate[v] is None)
        alive = [True] * self.n
        stack = [v for v in range(self.n) if lb(v) <= self.d]
        left = self.n
        while stack:
            v = stack.pop()
            if not alive[v]:
                continue
            alive[v] = False
            left -= 1
            for u in self.nbrs[v]:
                if alive[u] and mate[v] != u:
                    cnt[u] -= 1
                    if lb(u) <= self.d:
                        stack.append(u)
        return left == 0

    def dfs(self, k):
        self._tick()
        if not self._peel_ok():
            return False
        while k < self.n and self.mate[self.order[k]] is not None:
            k += 1
        if k == self.n:
            return True
        v = self.order[k]
        for u in sorted(self.nbrs[v]):
            if self.mate[u] is None:
                self.mate[v], self.mate[u] = u, v
                if self.dfs(k + 1):
                    return True
                self.mate[v] = self.mate[u] = None
        self.mate[v] = -1
        if self.dfs(k + 1):
            return True
        self.mate[v] = None
        return False

    def witness(self):
        hedges = [(self.verts[v], self.verts[u]) for v, u in enumerate(self.mate) if u is not None and v < u]
        hset = {frozenset(e) for e in hedges}
        adj = {v: set() for v in self.verts}
        for a, nb in enumerate(self.nbrs):
            for b in nb:
                u, v = self.verts[a], self.verts[b]
                if frozenset((u, v)) not in hset:
                    adj[u].add(v)
        sigma = degeneracy_ordering(adj, self.d)
        return DecompPair(ordering_to_orientation(adj, sigma), hedges)


def _prepare(g):
    adj = adjacency(g)
    verts = sorted(adj)
    ix = {v: i for i, v in enumerate(verts)}
    deg = {v: len(adj[v]) for v in verts}
    raw = sorted({(min(u, v), max(u, v)) for u in adj for v in adj[u]},
                 key=lambda e: (-max(deg[e[0]], deg[e[1]]), e))
    return verts, [(ix[a], ix[b]) for a, b in raw]


def _run_prefix(args):
    verts, edges, d, h, prunes, budget, prefix = args
    s = _Search(verts, edges, d, h, prunes, budget)
    if not s.apply_prefix(prefix):
        return False, None, s.nodes
    if s.dfs(len(prefix)):
        return True, s.witness(), s.nodes
    return False, None, s.nodes


def _prefixes(depth):
    if depth == 0:
        return [()]
    out = []
    for p in _prefixes(depth - 1):
        out += [p + (True,), p + (False,)]
    return out


def _exhaustive(verts, edges, d, h, budget):
    s = _Search(verts, edges, d, h, Prunes(caps=False, count=False, peel=False), budget)
    m = len(edges)
    for mask in range(1 << m):
        s._tick()
        s.reset()
        for i in range(m):
            s._set(i, bool(mask >> (m - 1 - i) & 1))
        if all(x <= h for x in s.hdeg) and s._peel_ok():
            return True, s.witness(), s.nodes
    return False, None, s.nodes


def exact_decide(g, d, h, *, exhaustive=False, max_edges=None, node_budget=DEFAULT_NODE_BUDGET,
                 prunes=Prunes(), workers=1, strategy="auto"):
    """Decide whether ``g`` splits into a d-degenerate graph and a graph of max degree h.

    ``strategy`` picks the pruned search: ``"edges"`` branches edge by edge,
    ``"matching"`` (h = 1 only) enumerates matchings and tests what is left,
    and ``"auto"`` uses matchings exactly when h = 1 and a plain degeneracy
    test when h = 0.  The matching search
    runs in one process whatever ``workers`` says.

    Raises :class:`BudgetExceeded` rather than guess when the graph has more
    than ``max_edges`` edges (40 exhaustive, 200 pruned by default) or the
    search visits more than ``node_budget`` nodes.
    """
    if d < 0 or h < 0:
        raise ContractError("d and h must be non-negative")
    if strategy not in ("auto", "edges", "matching"):
        raise ContractError(f"unknown strategy {strategy!r}")
    if strategy == "matching" and h != 1:
        raise ContractError("the matching search needs h = 1")
    t0 = time.perf_counter()
    verts, edges = _prepare(g)
    limit = max_edges if max_edges is not None else (40 if exhaustive else 200)
    if len(edges) > limit:
        raise BudgetExceeded(f"{len(edges)} edges exceed the budget of {limit}")
    if exhaustive:
        ok, wit, nodes = _exhaustive(verts, edges, d, h, node_budget)
        return OracleResult(ok, wit, nodes, time.perf_counter() - t0, d, h, "exhaustive")
    if h == 0 and strategy == "auto":
        # nothing can go to H, so the question is just the degeneracy
        adj = adjacency(g)
        sigma = degeneracy_ordering(adj, d)
        wit = None if sigma is None else DecompPair(ordering_to_orientation(adj, sigma))
        return OracleResult(sigma is not None, wit, 0, time.perf_counter() - t0, d, h, "degeneracy")

    if strategy == "matching" or (strategy == "auto" and h == 1):
        ms = _Matchings(verts, edges, d, node_budget)
        ok = ms.dfs(0)
        return OracleResult(ok, ms.witness() if ok else None, ms.nodes,
                            time.perf_counter() - t0, d, h, "matching")

    depth = 0
    while workers > 1 and (1 << depth) < 4 * workers and depth < len(edges):
        depth += 1
    tasks = [(verts, edges, d, h, prunes, node_budget, p) for p in _prefixes(depth)]
    total = 0
    found = (False, None)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = [pool.submit(_run_prefix, t) for t in tasks]
            for f in futs:
                ok, wit, nodes = f.result()
                total += nodes
                if ok:
                    found = (True, wit)
                    for rest in futs:
                        rest.cancel()
                    break
    else:
        for t in tasks:
            ok, wit, nodes = _run_prefix(t)
            total += nodes
            if ok:
                found = (True, wit)
                break
    return OracleResult(found[0], found[1], total, time.perf_counter() - t0, d, h, "pruned")


def min_h(g, d, **kw):
    """Least h for which ``g`` is (d,h)-decomposable, with the refuted smaller values."""
    adj = adjacency(g)
    top = max((len(nb) for nb in adj.values()), default=0)
    refuted = []
    for h in range(top + 1):
        r = exact_decide(g, d, h, **kw)
        if r.feasible:
            return MinH(h, r.witness, tuple(refuted))
        refuted.append(r)
    raise AssertionError("putting every edge into H always works")
