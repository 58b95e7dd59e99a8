"""(4,1)-decompositions: a 4-degenerate graph plus a matching.

Every plane triangulation contains one of five small configurations.  The
decomposer repeatedly finds one, records which edges of it go into the
matching and in which order its vertices are appended to the degeneracy
ordering, deletes it, and re-triangulates the hole by adding edges only.
"""
import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .errors import ContractError, DischargingContradiction, ProofStepError
from .plane import NearTriangulation, PlaneGraph, triangulate
from .verify import DecompPair, DegeneracyOrdering

__all__ = ["ChargeTable", "Decomposition41", "ReducibleConfig", "decompose41",
           "discharge_audit", "find_reducible"]

KINDS = ("I", "II", "III", "IV", "V")


@dataclass(frozen=True)
class ReducibleConfig:
    """A reducible configuration; ``vertices`` starts with the centre v.

    I: (v,).  II: (v, u).  III and V: (v, u1, u2, u3).  IV: (v, u1, ..., u5)
    with u3 and u5 the two 7-neighbours.
    """

    kind: str
    vertices: tuple

    @property
    def v(self):
        return self.vertices[0]

    @property
    def matching(self):
        vs = self.vertices
        if self.kind == "I":
            return ()
        if self.kind == "II":
            return ((vs[0], vs[1]),)
        if self.kind in ("III", "V"):
            return ((vs[0], vs[1]), (vs[2], vs[3]))
        return ((vs[0], vs[5]), (vs[1], vs[2]), (vs[3], vs[4]))

    @property
    def append_order(self):
        vs = self.vertices
        if self.kind == "I":
            return vs
        if self.kind == "II":
            return (vs[0], vs[1])
        if self.kind == "III":
            v, u1, u2, u3 = vs
            return (u3, u1, u2, v)
        if self.kind == "IV":
            v, u1, u2, u3, u4, u5 = vs
            return (u5, u1, u3, u2, u4, v)
        v, u1, u2, u3 = vs
        return (v, u2, u3, u1)

    def validate(self, rot):
        """Raise ProofStepError unless the degree and adjacency pattern holds in ``rot``."""
        if not _matches(rot, self):
            raise ProofStepError(f"configuration {self} does not match the graph")


def _deg(rot, v):
    return len(rot[v])


def _cyclic_from_min(nb):
    i = nb.index(min(nb))
    return nb[i:] + nb[:i]


def _match_at(rot, v, kind):
    """The configuration of ``kind`` centred at v, or None."""
    d = _deg(rot, v)
    nb = rot[v]
    if kind == "I":
        return ReducibleConfig("I", (v,)) if d <= 4 else None
    if kind == "II":
        if d != 5:
            return None
        fives = [u for u in nb if _deg(rot, u) == 5]
        return ReducibleConfig("II", (v, min(fives))) if fives else None
    if kind == "III":
        if d != 5:
            return None
        cyc = _cyclic_from_min(nb)
        for i in range(5):
            trip = [cyc[(i + t) % 5] for t in range(3)]
            if all(_deg(rot, u) <= 6 for u in trip):
                return ReducibleConfig("III", (v, *trip))
        return None
    if kind == "IV":
        if d != 5:
            return None
        degs = [_deg(rot, u) for u in nb]
        if sorted(degs)[2] > 6 or degs.count(7) != 2 or max(degs) > 7:
            return None
        for r in range(5):
            lab = nb[r:] + nb[:r]
            if _deg(rot, lab[2]) == 7 and _deg(rot, lab[4]) == 7:
                return ReducibleConfig("IV", (v, *lab))
        return None
    if d != 7:
        return None
    cyc = _cyclic_from_min(nb)
    for i in range(7):
        trip = [cyc[(i + t) % 7] for t in range(3)]
        if _deg(rot, trip[0]) == 5 and _deg(rot, trip[2]) == 5 and _deg(rot, trip[1]) <= 6:
            return ReducibleConfig("V", (v, *trip))
    return None


def _consecutive(nb, trip):
    k = len(nb)
    i = nb.index(trip[0])
    return all(nb[(i + t) % k] == trip[t] for t in range(len(trip)))


def _matches(rot, cfg):
    v, vs = cfg.v, cfg.vertices
    if v not in rot or any(u not in rot for u in vs):
        return False
    nb = rot[v]
    deg = lambda u: _deg(rot, u)
    if cfg.kind == "I":
        return deg(v) <= 4
    if cfg.kind == "II":
        return deg(v) == 5 and deg(vs[1]) == 5 and vs[1] in nb
    if cfg.kind == "III":
        trip = vs[1:]
        return deg(v) == 5 and all(deg(u) <= 6 for u in trip) and (
            _consecutive(nb, trip) or _consecutive(nb, trip[::-1]))
    if cfg.kind == "IV":
        lab = vs[1:]
        return (deg(v) == 5 and sorted(lab) == sorted(nb) and _consecutive(nb, lab)
                and deg(lab[2]) == 7 and deg(lab[4]) == 7
                and all(deg(lab[i]) <= 6 for i in (0, 1, 3)))
    trip = vs[1:]
    return (deg(v) == 7 and deg(trip[0]) == 5 and deg(trip[2]) == 5 and deg(trip[1]) <= 6
            and (_consecutive(nb, trip) or _consecutive(nb, trip[::-1])))


def _scan(rot, kinds=KINDS):
    order = sorted(rot)
    for kind in kinds:
        for v in order:
            cfg = _match_at(rot, v, kind)
            if cfg is not None:
                return cfg
    return None


def _rotation_of(t):
    if isinstance(t, NearTriangulation):
        t = t.graph
    if not isinstance(t, PlaneGraph):
        t = PlaneGraph(t)
    return t


def find_reducible(t):
    """The first configuration in the order I..V, scanning vertices by id."""
    g = _rotation_of(t)
    if g.n < 4 or any(len(f) != 3 for f in g.faces()):
        raise ContractError("expected a simple plane triangulation with at least four vertices")
    cfg = _scan(g.rotation)
    if cfg is None:
        raise DischargingContradiction("discharging contradiction: no reducible configuration")
    return cfg


# -- hole saturation -----------------------------------------------------------

def _insert_at(rot, w, p, t):
    """Put t into the angle at w entered from p."""
    nb = rot[w]
    if not nb:
        nb.append(t)
    else:
        nb.insert(nb.index(p), t)


def _hole_walks(rot, starts):
    """Face walks of ``rot`` through the given darts, as vertex lists."""
    seen = set()
    walks = []
    for dart in starts:
        if dart in seen:
            continue
        walk = []
        u, v = dart
        while (u, v) not in seen:
            seen.add((u, v))
            walk.append(u)
            nb = rot[v]
            u, v = v, nb[nb.index(u) - 1]
        walks.append(walk)
    return walks


def _saturate(rot, walks, isolated):
    """Add edges inside the hole until every face there is a triangle."""
    walks = [list(w) for w in walks] + [[v] for v in isolated]
    while len(walks) > 1:
        w1, w2 = walks.pop(), walks.pop()
        a, t = w1[0], w2[0]
        _insert_at(rot, a, w1[-1], t)
        _insert_at(rot, t, w2[-1], a)
        merged = [a] + w2 + ([t] if len(w2) > 1 else [])
        if len(w1) > 1:
            merged += [a] + w1[1:]
        walks.append(merged)
    if not walks:
        return
    todo = [w for w in walks if len(w) > 3]
    while todo:
        w = todo.pop()
        k = len(w)
        pick = None
        for i in range(k):
            for j in range(i + 2, k):
                if i == 0 and j == k - 1:
                    continue
                a, b = w[i], w[j]
                if a != b and b not in rot[a]:
                    pick = (i, j)
                    break
            if pick:
                break
        if pick is None:
            raise ProofStepError(f"cannot saturate face {w}")
        i, j = pick
        a, b = w[i], w[j]
        _insert_at(rot, a, w[i - 1], b)
        _insert_at(rot, b, w[j - 1], a)
        for part in (w[j:] + w[:i + 1], w[i:j + 1]):
            if len(part) > 3:
                todo.append(part)


def _delete(rot, S):
    """Remove S from ``rot`` and re-triangulate the hole; returns touched vertices."""
    link = {u for s in S for u in rot[s] if u not in S}
    starts = []
    for s in S:
        nb = rot[s]
        k = len(nb)
        for i in range(k):
            # face (s, a, b): arriving at a from s leads to b
            a = nb[i]
            b = nb[i - 1]
            if a not in S and b not in S:
                starts.append((b, a))
    for s in S:
        for u in rot[s]:
            if u not in S:
                rot[u].remove(s)
    for s in S:
        del rot[s]
    live_starts = [(a, b) for a, b in starts if b in rot[a]]
    isolated = sorted(u for u in link if not rot[u])
    walks = _hole_walks(rot, live_starts)
    _saturate(rot, walks, isolated)
    return link


class Decomposition41(NamedTuple):
    pair: DecompPair
    ordering: DegeneracyOrdering


def _earlier_counts(rot, cfg):
    S = cfg.vertices
    partner = {}
    for a, b in cfg.matching:
        partner[a], partner[b] = b, a
    later = set(S)
    counts = []
    for s in cfg.append_order:
        later.discard(s)
        c = sum(1 for u in rot[s] if u not in later and u != partner.get(s))
        counts.append(c)
    return counts


def decompose41(g, check_levels=True, search_order=KINDS):
    """Split the edges of a planar graph into a 4-degenerate graph and a matching.

    Returns the pair (D oriented along the ordering, H = the matching) and
    the 4-degenerate ordering itself.  ``search_order`` sets which kinds of
    configuration are preferred; any permutation of the five kinds works.
    """
    if sorted(search_order) != sorted(KINDS):
        raise ContractError(f"search_order must be a permutation of {KINDS}")
    if isinstance(g, NearTriangulation):
        g = g.graph
    if not isinstance(g, PlaneGraph):
        g = PlaneGraph(g)
    if g.n == 0:
        return Decomposition41(DecompPair(), DegeneracyOrdering(()))
    if g.n >= 3 and all(len(f) == 3 for f in g.faces()) and g.is_connected():
        rot = {v: list(nb) for v, nb in g.rotation.items()}
    else:
        t, _ = triangulate(g)
        rot = {v: list(nb) for v, nb in t.graph.rotation.items()}

    levels = []
    fast = search_order[0] == "I"
    small = [v for v in rot if len(rot[v]) <= 4] if fast else []
    heapq.heapify(small)
    while len(rot) > 3:
        cfg = None
        while small:
            v = heapq.heappop(small)
            if v in rot and len(rot[v]) <= 4:
                cfg = ReducibleConfig("I", (v,))
                break
        if cfg is None:
            cfg = _scan(rot, search_order[1:] if fast else search_order)
            if cfg is None:
                raise DischargingContradiction("discharging contradiction: no reducible configuration")
        if check_levels:
            cfg.validate(rot)
            counts = _earlier_counts(rot, cfg)
            if max(counts) > 4:
                raise ProofStepError(f"{cfg} leaves earlier-neighbour counts {counts}")
        levels.append(cfg)
        touched = _delete(rot, set(cfg.vertices))
        for u in touched:
            if fast and u in rot and len(rot[u]) <= 4:
                heapq.heappush(small, u)

    sigma = sorted(rot)
    for cfg in reversed(levels):
        sigma.extend(cfg.append_order)
    keep = set(g.vertices)
    sigma = [v for v in sigma if v in keep]
    matching = set()
    adj = g.adj
    for cfg in levels:
        for a, b in cfg.matching:
            if a in keep and b in adj[a]:
                matching.add((min(a, b), max(a, b)))
    pos = {v: i for i, v in enumerate(sigma)}
    arcs = [(u, v) if pos[u] > pos[v] else (v, u)
            for u, v in g.edges() if (u, v) not in matching]
    return Decomposition41(DecompPair(arcs, matching), DegeneracyOrdering(tuple(sigma)))


# -- discharging ---------------------------------------------------------------

@dataclass(frozen=True)
class ChargeTable:
    """Charges before and after every 6+-vertex shares deg-6 among its 5-neighbours."""

    initial: dict
    final: dict
    d5: dict
    config: object = None
    notes: tuple = field(default=())

    @property
    def total_initial(self):
        return sum(self.initial.values())

    @property
    def total_final(self):
        return sum(self.final.values(), Fraction(0))

    @property
    def negative(self):
        return tuple(sorted(v for v, c in self.final.items() if c < 0))


def discharge_audit(t):
    """Run the discharging rule on a triangulation and cross-check the bookkeeping."""
    g = _rotation_of(t)
    if g.n < 4 or any(len(f) != 3 for f in g.faces()):
        raise ContractError("expected a simple plane triangulation with at least four vertices")
    adj = g.adj
    deg = {v: len(adj[v]) for v in adj}
    initial = {v: deg[v] - 6 for v in adj}
    d5 = {v: sum(1 for u in adj[v] if deg[u] == 5) for v in adj}
    final = {v: Fraction(c) for v, c in initial.items()}
    for v in adj:
        if deg[v] >= 6 and d5[v]:
            share = Fraction(deg[v] - 6, d5[v])
            for u in adj[v]:
                if deg[u] == 5:
                    final[u] += share
                    final[v] -= share
    total = sum(final.values(), Fraction(0))
    if sum(initial.values()) != -12 or total != -12:
        raise ProofStepError(f"charge is not conserved at -12: {sum(initial.values())} -> {total}")
    notes = []
    if _scan(g.rotation, ("II",)) is None:
        over = [v for v in adj if d5[v] > deg[v] // 2]
        if over:
            raise ProofStepError(f"vertices {over} have more than deg/2 five-neighbours without adjacent 5-vertices")
        notes.append("no adjacent 5-vertices; d5(v) <= deg(v)/2 holds everywhere")
    cfg = _scan(g.rotation)
    if cfg is None:
        raise DischargingContradiction(
            "no reducible configuration, yet the final charges "
            + ("are all non-negative" if all(c >= 0 for c in final.values()) else "contain a negative")
            + " while they sum to -12")
    return ChargeTable(initial, final, d5, cfg, tuple(notes))
