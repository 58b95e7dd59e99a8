"""(3,2)-decompositions of near triangulations.

D is acyclic with out-degree at most 3 and H has maximum degree at most 2.
The recursion is rooted at (x, y, z) or (x, y, z, z'), where z is a boundary
vertex touching no chord and z' is one of its boundary neighbours, named
only when neither x nor y sits next to z.
"""
from ._levelcheck import ok32
from ._acc import Acc, merge, run_deep
from ._region import Region
from .errors import ContractError, ProofStepError
from .plane import NearTriangulation
from .verify import check_32, conditions_32

__all__ = ["check_32", "choose_z", "decompose32"]


def _chord_ends(R):
    ends = set()
    for a, b in R.chords():
        ends.add(a)
        ends.add(b)
    return ends


def _take_root_edge(acc2, u, v):
    """Drop the shared edge uv from a piece rooted at (u, v, .) after checking it is isolated."""
    if acc2.out.get(u, set()) != {v} or acc2.od(v) or acc2.hd(u) or acc2.hd(v):
        raise ProofStepError(f"piece rooted at ({u},{v}) does not isolate the edge {u}{v}")
    acc2.unarc(u, v)


class _Solver:
    def __init__(self, check_levels):
        self.check = check_levels

    def solve(self, R, x, y, z, zp):
        acc = self._solve(R, x, y, z, zp)
        if self.check:
            adj = R.adjacency()
            if not ok32(adj, R.cycle, x, y, z, zp, acc):
                rep = conditions_32(adj, R.cycle, x, y, z, zp, acc.pair())
                raise ProofStepError(f"level {R.cycle} rooted ({x},{y},{z},{zp}): " + "; ".join(rep.lines()))
        return acc

    def _solve(self, R, x, y, z, zp):
        if R.is_triangle():
            acc = Acc()
            acc.arc(x, y)
            acc.arc(z, x)
            acc.arc(z, y)
            return acc
        if len(R) == 3:
            return self.case1(R, x, y, z)
        chords = R.chords()
        if chords:
            return self.case2(R, x, y, z, zp, chords)
        return self.case3(R, x, y, z, zp)

    @staticmethod
    def _zprime(R, x, y, w):
        """Extra root vertex for w, or None when w sits next to x or y."""
        a, b = R.pred(w), R.succ(w)
        if a in (x, y) or b in (x, y):
            return None
        return min(a, b)

    def case1(self, R, x, y, z):
        inner = R.fan(z)[1:-1]
        sub = R.without(z)
        ends = _chord_ends(sub)
        w = min(u for u in inner if u not in ends)
        acc = self.solve(sub, x, y, w, self._zprime(sub, x, y, w))
        acc.arc(z, y)
        acc.arc(z, x)
        for u in inner:
            acc.arc(u, z)
        return acc

    def case2(self, R, x, y, z, zp, chords):
        k = len(R)
        pos = R.pos
        ends = _chord_ends(R)
        # prefix[i] = number of chord ends among cycle[0..i-1]
        prefix = [0]
        for v in R.cycle:
            prefix.append(prefix[-1] + (v in ends))

        def inside(i, j):
            """Chord ends strictly between positions i and j going forward."""
            if (j - i) % k <= 1:
                return 0
            a, b = i + 1, j
            if a <= b:
                return prefix[b] - prefix[a]
            return prefix[k] - prefix[a] + prefix[b]

        roots = {x, y, z}
        same_side, far_of = [], {}
        for a, b in chords:
            i, j = pos[a], pos[b]
            span = (j - i) % k
            on_a = all((pos[r] - i) % k <= span for r in roots)
            on_b = all((pos[r] - j) % k <= (i - j) % k for r in roots)
            if on_a or on_b:
                # the far side runs from the chord end opposite to the roots
                lo, hi = (j, i) if on_a else (i, j)
                if not inside(lo, hi):
                    same_side.append((a, b))
                    far_of[(a, b)] = (lo, hi)
        if same_side:
            return self.case21(R, x, y, z, zp, same_side, far_of)

        near = []
        for a, b in chords:
            i, j = pos[a], pos[b]
            lo, hi = (i, j) if (pos[x] - i) % k <= (j - i) % k and (pos[y] - i) % k <= (j - i) % k else (j, i)
            if not inside(lo, hi):
                near.append(((a, b), lo, hi))
        return self.case22(R, x, y, z, zp, near)

    @staticmethod
    def _side(R, lo, hi):
        c, k = R.cycle, len(R)
        return Region(R.emb, [c[(lo + t) % k] for t in range((hi - lo) % k + 1)])

    def _smallest(self, R, cands):
        best = None
        for chord, lo, hi in cands:
            side = self._side(R, lo, hi)
            key = (len(side.vertices()), chord)
            if best is None or key < best[0]:
                best = (key, chord, side, lo, hi)
        return best[1:]

    def case21(self, R, x, y, z, zp, chords, far_of):
        (u, v), R2, lo, hi = self._smallest(R, [(c,) + far_of[c] for c in chords])
        c, k = R.cycle, len(R)
        R1 = Region(R.emb, [c[(hi + t) % k] for t in range((lo - hi) % k + 1)])
        acc1 = self.solve(R1, x, y, z, zp)
        zdd = R2.succ(v) if R2.succ(v) != u else R2.pred(v)
        acc2 = self.solve(R2, u, v, zdd, None)
        _take_root_edge(acc2, u, v)
        return merge(acc1, acc2)

    def case22(self, R, x, y, z, zp, near):
        (u, v), R1, lo, hi = self._smallest(R, near)
        c, k = R.cycle, len(R)
        R2 = Region(R.emb, [c[(hi + t) % k] for t in range((lo - hi) % k + 1)])
        if z not in R2.pos or z in (u, v):
            raise ProofStepError(f"chord {u}{v} does not separate z={z} from the root edge")
        w = R1.succ(x) if R1.succ(x) != y else R1.pred(x)
        acc1 = self.solve(R1, x, y, w, None)
        zp2 = None if (R2.pred(z) in (u, v) or R2.succ(z) in (u, v)) else zp
        acc2 = self.solve(R2, u, v, z, zp2)
        _take_root_edge(acc2, u, v)
        return merge(acc1, acc2)

    def case3(self, R, x, y, z, zp):
        a, b = R.pred(z), R.succ(z)
        keep = {x, y, zp}
        cand = [t for t in (a, b) if t not in keep]
        if len(cand) != 1:
            raise ProofStepError(f"boundary neighbours of z={z} are not split as expected: {a}, {b}")
        w = cand[0]
        wstar = b if w == a else a
        U = R.fan(z)[1:-1]
        Uset = set(U)
        sub = R.without(z)
        wn = [t for t in (sub.pred(w), sub.succ(w)) if t in Uset]
        if len(wn) != 1:
            raise ProofStepError(f"w={w} should have exactly one new boundary neighbour")
        w1 = wn[0]
        at_w = sorted(sub.chords_at(w))
        if not at_w:
            return self.case31(R, sub, x, y, z, zp, w, wstar, w1, U)
        return self.case32(R, x, y, z, zp, w, at_w[0])

    def case31(self, R, sub, x, y, z, zp, w, wstar, w1, U):
        near_root = R.pred(w) in (x, y) or R.succ(w) in (x, y)
        acc = self.solve(sub, x, y, w, None if near_root else w1)
        hw = acc.hd(w)
        if hw == 2 and acc.od(w):
            raise ProofStepError(f"w={w} has two H-edges and an out-arc")
        for u in U:
            acc.arc(u, z)
        if wstar in (x, y):
            if hw <= 1:
                acc.arc(z, wstar)
                acc.hedge(z, w)
            else:
                acc.arc(w, z)
                acc.arc(z, wstar)
            return acc
        if wstar != zp:
            raise ProofStepError(f"other neighbour {wstar} of z is none of x, y, z'")
        full = acc.od(zp) >= 2
        if not full:
            acc.arc(zp, z)
        else:
            acc.hedge(z, zp)
        if hw <= 1:
            acc.hedge(z, w)
        else:
            acc.arc(w, z)
        return acc

    def case32(self, R, x, y, z, zp, w, v):
        tri = [z, w, v] if R.succ(z) == w else [w, z, v]
        R2 = Region(R.emb, tri)
        hidden = R2.interior()
        if not hidden:
            raise ProofStepError(f"triangle {z}{w}{v} does not separate")
        acc2 = self.solve(R2, w, v, z, None)
        for s, t in ((w, v), (z, w), (z, v)):
            acc2.unarc(s, t)
        dead = R.emb.dead
        dead |= hidden
        try:
            acc1 = self.solve(R, x, y, z, zp)
        finally:
            dead -= hidden
        return merge(acc1, acc2)


def choose_z(t, x, y):
    """Smallest boundary vertex other than x and y that touches no chord."""
    R = t.region()
    ends = _chord_ends(R)
    for v in sorted(t.outer):
        if v not in (x, y) and v not in ends:
            return v
    raise ProofStepError("every boundary vertex lies on a chord")


def decompose32(t, x, y, z=None, z_prime=None, check_levels=True):
    """A (3,2)-decomposition of ``t`` rooted at (x, y, z[, z']).

    ``z`` defaults to :func:`choose_z`.  When z is not next to x or y and
    ``z_prime`` is omitted, the boundary predecessor of z is used.
    """
    if not isinstance(t, NearTriangulation):
        raise ContractError("expected a NearTriangulation")
    if not (t.is_boundary(x) and t.is_boundary(y)) or y not in t.boundary_neighbors(x):
        raise ContractError(f"{x}{y} is not a boundary edge")
    if z is None:
        z = choose_z(t, x, y)
    if not t.is_boundary(z) or z in (x, y):
        raise ContractError(f"{z} is not a boundary vertex other than {x}, {y}")
    R = t.region()
    if z in _chord_ends(R):
        raise ContractError(f"{z} is incident with a chord")
    nb = t.boundary_neighbors(z)
    if x in nb or y in nb:
        if z_prime is not None:
            raise ContractError("z' must be omitted when z is next to x or y")
    elif z_prime is None:
        z_prime = nb[0]
    elif z_prime not in nb:
        raise ContractError(f"{z_prime} is not a boundary neighbour of {z}")
    solver = _Solver(check_levels)
    return run_deep(solver.solve, R, x, y, z, z_prime).pair()
