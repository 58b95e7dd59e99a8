"""Deterministic generators for plane triangulations.

Randomness comes from :class:`Lcg`, a 64-bit linear congruential generator
(multiplier 6364136223846793005, increment 1442695040888963407).  The state
starts at ``seed mod 2**64``; each draw advances the state once and returns
``state >> 32``.  Face choices take that value modulo the number of
candidate faces, so corpora can be rebuilt bit for bit anywhere.
"""
from .errors import ContractError
from .plane import NearTriangulation, PlaneGraph, _rotate_to_min

__all__ = ["Lcg", "double_wheel", "flipped_triangulation", "min5_triangulation", "named_solid",
           "outer_face", "stacked_triangulation", "stellate", "subdivide"]

_MASK = (1 << 64) - 1


class Lcg:
    A = 6364136223846793005
    C = 1442695040888963407

    def __init__(self, seed):
        self.state = seed & _MASK

    def next(self):
        self.state = (self.A * self.state + self.C) & _MASK
        return self.state >> 32

    def below(self, k):
        return self.next() % k


def outer_face(g):
    """The face whose sorted vertex triple is lexicographically smallest."""
    walks = [tuple(_rotate_to_min(f.vertices)) for f in g.faces()]
    return min(walks, key=lambda w: (sorted(w), w))


def _closed(faces):
    g = PlaneGraph.from_faces(faces)
    return NearTriangulation(g, outer_face(g))


def stacked_triangulation(n, seed):
    """Start from the triangle 1,2,3 and put vertices 4..n into random inner faces."""
    if n < 3:
        raise ContractError("a stacked triangulation needs n >= 3")
    rng = Lcg(seed)
    inner = [(1, 3, 2)]
    for v in range(4, n + 1):
        i = rng.below(len(inner))
        a, b, c = inner[i]
        inner[i] = (a, b, v)
        inner.append((b, c, v))
        inner.append((c, a, v))
    return _closed([(1, 2, 3)] + inner)


def _flip(rot, u, v):
    ru, rv = rot[u], rot[v]
    a = rv[rv.index(u) - 1]
    b = ru[ru.index(v) - 1]
    if a == b or b in rot[a]:
        return None
    ru.remove(v)
    rv.remove(u)
    ra, rb = rot[a], rot[b]
    ra.insert(ra.index(v), b)
    rb.insert(rb.index(u), a)
    return a, b


def _lonely_fives(rot, vs):
    return all(len(rot[w]) != 5 or len(rot[x]) != 5 for w in vs for x in rot[w])


def _flip_scramble(rot, rng, flips, min_degree, lonely=False):
    """Random edge flips keeping every degree >= min_degree.

    With ``lonely`` a flip is undone when it makes two 5-vertices adjacent.
    """
    verts = sorted(rot)
    for _ in range(flips):
        u = verts[rng.below(len(verts))]
        ru = rot[u]
        v = ru[rng.below(len(ru))]
        if len(ru) <= min_degree or len(rot[v]) <= min_degree:
            continue
        ab = _flip(rot, u, v)
        if ab is None or not lonely or _lonely_fives(rot, (u, v) + ab):
            continue
        if _flip(rot, *ab) is None:
            raise AssertionError("flip could not be undone")


def _from_rotation(rot):
    g = PlaneGraph(rot)
    return NearTriangulation(g, outer_face(g))


def flipped_triangulation(n, seed, flips=None):
    """A stacked triangulation scrambled by ``flips`` random edge flips (default 2n).

    Stacked triangulations are chordal, so every long cycle has a chord; the
    flips produce the chordless separating structure they lack.
    """
    t = stacked_triangulation(n, seed)
    rot = {v: list(nb) for v, nb in t.graph.rotation.items()}
    _flip_scramble(rot, Lcg(seed ^ 0x9E3779B97F4A7C15), 2 * n if flips is None else flips, 3)
    return _from_rotation(rot)


def subdivide(t):
    """Split every triangle into four through new edge midpoints."""
    g = t.graph if isinstance(t, NearTriangulation) else t
    mid = {}
    nxt = max(g.vertices) + 1
    for e in sorted(g.edges()):
        mid[e] = nxt
        nxt += 1
    m = lambda a, b: mid[(a, b) if a < b else (b, a)]
    faces = []
    for f in g.faces():
        a, b, c = f.vertices
        ab, bc, ca = m(a, b), m(b, c), m(c, a)
        faces += [(a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca)]
    return _closed(faces)


def min5_triangulation(level, seed, flips=None):
    """Icosahedron subdivided ``level`` times, then flipped at random.

    Flips keep the minimum degree at 5 and never make two 5-vertices adjacent.
    """
    t = named_solid("icosahedron")
    for _ in range(level):
        t = subdivide(t)
    rot = {v: list(nb) for v, nb in t.graph.rotation.items()}
    _flip_scramble(rot, Lcg(seed), t.n if flips is None else flips, 5, lonely=True)
    return _from_rotation(rot)


_TETRA = [(1, 2, 3), (1, 3, 4), (1, 4, 2), (2, 4, 3)]


def _icosahedron():
    top = [2 + i for i in range(5)]
    bot = [7 + i for i in range(5)]
    faces = []
    for i in range(5):
        j = (i + 1) % 5
        faces += [(1, top[i], top[j]), (top[j], top[i], bot[i]),
                  (top[j], bot[i], bot[j]), (12, bot[j], bot[i])]
    return faces


def _wheel_faces(k):
    faces = []
    for i in range(1, k + 1):
        j = i % k + 1
        faces += [(k + 1, i, j), (k + 2, j, i)]
    return faces


def named_solid(name):
    if name == "tetrahedron":
        return _closed(_TETRA)
    if name == "octahedron":
        return _closed(_wheel_faces(4))
    if name == "icosahedron":
        return _closed(_icosahedron())
    raise ContractError(f"unknown solid {name!r}")


def double_wheel(k):
    """Rim 1..k with hubs k+1 and k+2 joined to every rim vertex."""
    if k < 3:
        raise ContractError("a double wheel needs k >= 3")
    return _closed(_wheel_faces(k))


def stellate(t, with_faces=False):
    """Put a new degree-3 vertex into every face of a triangulation.

    With ``with_faces`` the map from each new vertex to its face is returned too.
    """
    g = t.graph if isinstance(t, NearTriangulation) else t
    faces = g.faces()
    if any(len(f) != 3 for f in faces):
        raise ContractError("stellation needs a triangulation")
    nxt = max(g.vertices) + 1
    out, owner = [], {}
    for f in faces:
        a, b, c = f.vertices
        out += [(a, b, nxt), (b, c, nxt), (c, a, nxt)]
        owner[nxt] = (a, b, c)
        nxt += 1
    s = PlaneGraph.from_faces(out)
    return (s, owner) if with_faces else s
