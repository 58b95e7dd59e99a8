"""Plane graphs given by rotation systems, near triangulations and their surgeries.

Conventions
-----------
``rotation[v]`` lists the neighbours of ``v`` clockwise.  Face tracing maps
the directed edge ``(u, v)`` to ``(v, w)`` where ``w`` is the neighbour that
precedes ``u`` in ``rotation[v]``; bounded faces are then traced clockwise and
the outer face counterclockwise.  A near triangulation stores its outer face
as the vertex sequence of that walk.
"""
from collections import deque
from dataclasses import dataclass, field

from ._region import Embedding, Region
from .errors import ContractError, StructureError


class PlaneGraph:
    """Simple graph with a rotation system.  Immutable."""

    __slots__ = ("rotation", "_index", "_adj")

    def __init__(self, rotation, validate=True):
        self.rotation = {v: tuple(rotation[v]) for v in sorted(rotation)}
        self._index = {v: {u: i for i, u in enumerate(nb)} for v, nb in self.rotation.items()}
        self._adj = None
        if validate:
            self._validate()

    def _validate(self):
        rot = self.rotation
        for v, nb in rot.items():
            if v in nb:
                raise StructureError(f"self-loop at vertex {v}")
            if len(set(nb)) != len(nb):
                raise StructureError(f"repeated neighbour in rotation of {v}")
            for u in nb:
                if u not in rot:
                    raise StructureError(f"vertex {v} lists unknown neighbour {u}")
                if v not in self._index[u]:
                    raise StructureError(f"asymmetric rotation: {u} does not list {v}")
        for comp in self.components():
            nv = len(comp)
            ne = sum(len(rot[v]) for v in comp) // 2
            nf = len(_trace(self, comp))
            if nv > 1 and nv - ne + nf != 2:
                raise StructureError("rotation system does not describe a planar embedding")

    @classmethod
    def from_faces(cls, faces):
        """Build the rotation system of a closed surface given its oriented face walks."""
        before = {}
        for f in faces:
            k = len(f)
            for i in range(k):
                a, b, c = f[i], f[(i + 1) % k], f[(i + 2) % k]
                # leaving b towards c after arriving from a: c sits just before a
                slot = before.setdefault(b, {})
                if a in slot:
                    raise StructureError(f"directed edge ({a},{b}) used twice")
                slot[a] = c
        rot = {}
        for v, slot in before.items():
            start = min(slot)
            seq = [start]
            cur = slot[start]
            while cur != start:
                seq.append(cur)
                cur = slot[cur]
            if len(seq) != len(slot):
                raise StructureError(f"faces around {v} do not close up into one cycle")
            rot[v] = seq[::-1]
        return cls(rot)

    @property
    def n(self):
        return len(self.rotation)

    @property
    def vertices(self):
        return tuple(self.rotation)

    @property
    def m(self):
        return sum(len(nb) for nb in self.rotation.values()) // 2

    @property
    def adj(self):
        if self._adj is None:
            self._adj = {v: frozenset(nb) for v, nb in self.rotation.items()}
        return self._adj

    def degree(self, v):
        return len(self.rotation[v])

    def has_edge(self, u, v):
        return v in self._index.get(u, ())

    def edges(self):
        return [(u, v) for u, nb in self.rotation.items() for v in sorted(nb) if u < v]

    def turn(self, u, v):
        """The vertex following ``v`` on the face containing directed edge (u, v)."""
        nb = self.rotation[v]
        return nb[self._index[v][u] - 1]

    def components(self):
        seen = set()
        out = []
        for s in self.rotation:
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            todo = deque([s])
            while todo:
                v = todo.popleft()
                for w in self.rotation[v]:
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        todo.append(w)
            out.append(sorted(comp))
        return out

    def is_connected(self):
        return len(self.components()) <= 1

    def faces(self):
        return trace_faces(self)

    def subgraph(self, vertices):
        keep = set(vertices)
        return PlaneGraph({v: [u for u in self.rotation[v] if u in keep] for v in keep}, validate=False)

    def __eq__(self, other):
        return isinstance(other, PlaneGraph) and self.rotation == other.rotation

    def __hash__(self):
        return hash(tuple(self.rotation.items()))

    def __repr__(self):
        return f"PlaneGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Face:
    walk: tuple

    @property
    def vertices(self):
        return tuple(u for u, _ in self.walk)

    def __len__(self):
        return len(self.walk)


def _trace(g, vertices):
    seen = set()
    faces = []
    for u in vertices:
        for v in g.rotation[u]:
            if (u, v) in seen:
                continue
            walk = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                walk.append((a, b))
                a, b = b, g.turn(a, b)
            faces.append(Face(tuple(walk)))
    return faces


def trace_faces(g):
    """All faces of ``g``; every directed edge lies on exactly one returned walk."""
    return _trace(g, g.rotation)


def _rotate_to_min(seq):
    i = seq.index(min(seq))
    return tuple(seq[i:]) + tuple(seq[:i])


class NearTriangulation:
    """A 2-connected plane graph whose faces other than ``outer`` are triangles."""

    __slots__ = ("graph", "outer", "_bpos")

    def __init__(self, graph, outer):
        if not isinstance(graph, PlaneGraph):
            graph = PlaneGraph(graph)
        self.graph = graph
        outer = tuple(outer)
        if len(set(outer)) != len(outer):
            raise StructureError("outer walk repeats a vertex; graph is not 2-connected")
        if graph.n < 3 or len(outer) < 3:
            raise StructureError("a near triangulation needs at least three vertices")
        if not graph.is_connected():
            raise StructureError("near triangulation must be connected")
        walk = {(outer[i], outer[(i + 1) % len(outer)]) for i in range(len(outer))}
        found = False
        for f in graph.faces():
            if set(f.walk) == walk:
                found = True
            elif len(f) != 3:
                raise StructureError(f"inner face {f.vertices} is not a triangle")
        if not found:
            raise StructureError(f"outer cycle {outer} is not a face of the embedding")
        self.outer = _rotate_to_min(outer)
        self._bpos = {v: i for i, v in enumerate(self.outer)}

    @property
    def n(self):
        return self.graph.n

    def is_boundary(self, v):
        return v in self._bpos

    def boundary_neighbors(self, v):
        c = self.outer
        i = self._bpos[v]
        return c[i - 1], c[(i + 1) % len(c)]

    def interior(self):
        return tuple(v for v in self.graph.vertices if v not in self._bpos)

    def region(self):
        """A fresh internal disc view (private embedding)."""
        return Region(Embedding(self.graph.rotation), self.outer)

    def __eq__(self, other):
        return isinstance(other, NearTriangulation) and (self.graph, self.outer) == (other.graph, other.outer)

    def __hash__(self):
        return hash((self.graph, self.outer))

    def __repr__(self):
        return f"NearTriangulation(n={self.n}, outer={self.outer})"


def _materialize(region):
    return NearTriangulation(PlaneGraph(region.rotation(), validate=False), region.cycle)


def boundary_cycle(t):
    return t.outer


def find_chords(t):
    return set(t.region().chords())


def split_at_chord(t, u, v):
    """The two near triangulations sharing chord uv, ordered by their sorted vertex sets."""
    r = t.region()
    if not (r.on_boundary(u) and r.on_boundary(v)) or v not in r.chords_at(u):
        raise ContractError(f"{u}{v} is not a chord of the boundary cycle")
    parts = [_materialize(p) for p in r.split(u, v)]
    parts.sort(key=lambda p: p.graph.vertices)
    return tuple(parts)


def remove_boundary_vertex(t, z):
    r = t.region()
    if not r.on_boundary(z):
        raise ContractError(f"{z} is not a boundary vertex")
    try:
        return _materialize(r.without(z))
    except ContractError as exc:
        raise StructureError(str(exc)) from None


def block_containing(g, removed, anchors):
    """The block of ``g - removed`` containing every anchor, as a near triangulation."""
    import networkx as nx

    base = g.graph if isinstance(g, NearTriangulation) else g
    removed = set(removed)
    anchors = set(anchors)
    keep = [v for v in base.vertices if v not in removed]
    h = base.subgraph(keep)
    nxg = nx.Graph()
    nxg.add_nodes_from(keep)
    nxg.add_edges_from(h.edges())
    block = None
    for comp in nx.biconnected_components(nxg):
        if anchors <= comp and len(comp) >= 3:
            block = comp
            break
    if block is None:
        raise ContractError("anchors do not lie in one block")
    sub = h.subgraph(block)
    faces = sub.faces()
    outer = None
    if isinstance(g, NearTriangulation):
        c = g.outer
        old = {(c[i], c[(i + 1) % len(c)]) for i in range(len(c))}
        for f in faces:
            if old & set(f.walk):
                outer = f
                break
    if outer is None:
        long = [f for f in faces if len(f) > 3]
        outer = long[0] if len(long) == 1 else min(faces, key=lambda f: sorted(f.vertices))
    return NearTriangulation(sub, outer.vertices)


@dataclass(frozen=True)
class BoundaryContext:
    """Rooting data (x, y, z) of a near triangulation together with its b-values."""

    x: int
    y: int
    z: int
    z_prime: int
    z_dprime: int
    b: dict = field(compare=False)

    @classmethod
    def of(cls, t, x, y, z, z_prime=None):
        if not (t.is_boundary(x) and t.is_boundary(y)) or y not in t.boundary_neighbors(x):
            raise ContractError(f"{x}{y} is not a boundary edge")
        if not t.is_boundary(z) or z in (x, y):
            raise ContractError(f"{z} is not a boundary vertex other than {x}, {y}")
        b = {w: sum(1 for r in t.boundary_neighbors(w) if r in (x, y)) for w in t.outer}
        p, q = t.boundary_neighbors(z)
        if z_prime is None:
            z1, z2 = p, q
        elif z_prime == p:
            z1, z2 = p, q
        elif z_prime == q:
            z1, z2 = q, p
        else:
            raise ContractError(f"{z_prime} is not a boundary neighbour of {z}")
        return cls(x, y, z, z1, z2, b)


def b_value(ctx, w):
    if w not in ctx.b:
        raise ContractError(f"{w} is not a boundary vertex")
    return ctx.b[w]


@dataclass(frozen=True)
class Provenance:
    """Which parts of a triangulated graph are original."""

    original_vertices: frozenset
    added_vertices: tuple
    added_edges: frozenset


def _insert_before(rot, v, anchor, new):
    nb = rot[v]
    nb.insert(nb.index(anchor), new)


def triangulate(g):
    """Extend ``g`` to a simple plane triangulation with a triangular outer face.

    Components are first joined by single edges; then every face that is not a
    simple triangle receives a new apex joined once to each distinct vertex of
    its walk.  Faces left non-triangular (walks that revisit a vertex) are
    treated again until none remain.
    """
    if isinstance(g, NearTriangulation):
        g = g.graph
    if g.n == 0:
        raise ContractError("cannot triangulate the empty graph")
    rot = {v: list(nb) for v, nb in g.rotation.items()}
    orig_edges = set(g.edges())
    nxt = max(rot) + 1
    added = []

    comps = g.components()
    root = comps[0][0]
    for comp in comps[1:]:
        rot[root].append(comp[0])
        rot[comp[0]].append(root)
    if len(rot) == 1:
        a, b = nxt, nxt + 1
        added += [a, b]
        nxt += 2
        rot[root] = [a, b]
        rot[a] = [b, root]
        rot[b] = [root, a]

    while True:
        cur = PlaneGraph(rot, validate=False)
        todo = [f for f in cur.faces() if len(f) != 3]
        if not todo:
            break
        for f in todo:
            walk = f.vertices
            k = len(walk)
            apex = nxt
            nxt += 1
            added.append(apex)
            joined = []
            for i, w in enumerate(walk):
                if w in joined:
                    continue
                joined.append(w)
                _insert_before(rot, w, walk[i - 1], apex)
            rot[apex] = joined
            if k < 2:
                raise StructureError("degenerate face")
    t = PlaneGraph(rot)
    outer = min(t.faces(), key=lambda f: sorted(f.vertices))
    new_edges = frozenset(e for e in t.edges() if e not in orig_edges)
    prov = Provenance(frozenset(g.vertices), tuple(added), new_edges)
    return NearTriangulation(t, outer.vertices), prov


def is_triangulation(g):
    return g.n >= 3 and g.is_connected() and all(len(f) == 3 for f in g.faces())
