"""Cycle-bounded discs over one shared rotation system.

The recursive decomposers never copy graphs.  A subproblem is the part of a
fixed plane graph enclosed by a boundary cycle, listed in the direction of
the outer face walk.  Vertices in ``Embedding.dead`` are treated as absent;
the (3,2) recursion uses this to cut out the inside of a separating triangle.
"""
from collections import deque

from .errors import ContractError


class Embedding:
    __slots__ = ("rot", "idx", "dead")

    def __init__(self, rotation):
        self.rot = {v: list(nb) for v, nb in rotation.items()}
        self.idx = {v: {u: i for i, u in enumerate(nb)} for v, nb in self.rot.items()}
        self.dead = set()


class Region:
    __slots__ = ("emb", "cycle", "pos")

    def __init__(self, emb, cycle):
        self.emb = emb
        self.cycle = list(cycle)
        self.pos = {v: i for i, v in enumerate(self.cycle)}

    def __len__(self):
        return len(self.cycle)

    def succ(self, v):
        c = self.cycle
        return c[(self.pos[v] + 1) % len(c)]

    def pred(self, v):
        c = self.cycle
        return c[self.pos[v] - 1]

    def on_boundary(self, v):
        return v in self.pos

    def fan(self, v):
        """Neighbours of boundary vertex ``v`` inside the disc, from succ(v) round to pred(v)."""
        emb = self.emb
        rot = emb.rot[v]
        c = self.cycle
        i = self.pos[v]
        ix = emb.idx[v]
        k = ix[c[(i + 1) % len(c)]]
        j = ix[c[i - 1]]
        # walk the rotation backwards from index k down to index j, wrapping
        if k >= j:
            out = rot[j:k + 1][::-1]
        else:
            out = rot[k::-1] + rot[:j - 1:-1]
        dead = emb.dead
        if dead:
            return [w for w in out if w not in dead]
        return out

    def in_fan(self, v, w):
        emb = self.emb
        ix = emb.idx[v]
        d = len(emb.rot[v])
        i = ix[self.succ(v)]
        return (i - ix[w]) % d <= (i - ix[self.pred(v)]) % d

    def neighbors(self, v):
        if v in self.pos:
            return self.fan(v)
        dead = self.emb.dead
        if not dead:
            return self.emb.rot[v]
        return [w for w in self.emb.rot[v] if w not in dead]

    def is_triangle(self):
        """True when the disc is exactly K3."""
        return len(self.cycle) == 3 and len(self.fan(self.cycle[0])) == 2

    def chords(self):
        pos = self.pos
        out = []
        for v in self.cycle:
            for w in self.fan(v)[1:-1]:
                if w in pos and v < w:
                    out.append((v, w))
        out.sort()
        return out

    def chords_at(self, v):
        pos = self.pos
        return [w for w in self.fan(v)[1:-1] if w in pos]

    def vertices(self):
        seen = set(self.cycle)
        todo = deque(self.cycle)
        while todo:
            v = todo.popleft()
            for w in self.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return seen

    def adjacency(self):
        adj = {}
        todo = list(self.cycle)
        seen = set(todo)
        while todo:
            v = todo.pop()
            nb = self.neighbors(v)
            adj[v] = set(nb)
            for w in nb:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return adj

    def interior(self):
        return self.vertices() - set(self.cycle)

    # -- surgeries ---------------------------------------------------------

    def without(self, z):
        """The disc with boundary vertex ``z`` deleted."""
        f = self.fan(z)
        inner = f[1:-1]
        # a degree-2 vertex just leaves its neighbours' chord on the boundary
        if any(w in self.pos for w in inner) or (not inner and len(self.cycle) == 3):
            raise ContractError(f"deleting {z} leaves a graph that is not 2-connected")
        i = self.pos[z]
        c = self.cycle
        return Region(self.emb, c[:i] + inner[::-1] + c[i + 1:])

    def split(self, u, v):
        """Split along chord uv; the first part runs forward from u to v."""
        i, j = self.pos[u], self.pos[v]
        c = self.cycle
        if i < j:
            a = c[i:j + 1]
            b = c[j:] + c[:i + 1]
        else:
            a = c[i:] + c[:j + 1]
            b = c[j:i + 1]
        return Region(self.emb, a), Region(self.emb, b)

    def rotation(self):
        """Rotation system of the disc as an induced plane subgraph."""
        rot = {}
        for v in sorted(self.vertices()):
            if v in self.pos:
                rot[v] = self.fan(v)[::-1]
            else:
                rot[v] = list(self.neighbors(v))
        return rot
