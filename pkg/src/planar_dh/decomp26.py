"""(2,6)-decompositions of near triangulations.

Every edge goes either into an acyclic digraph D of out-degree at most 2 or
into a graph H of maximum degree at most 6.  The recursion works on a disc
(:class:`~planar_dh._region.Region`) and carries rooting data (x, y, z): xy is
a boundary edge and z another boundary vertex.  Boundary vertices get tighter
budgets so that pieces can be glued along chords and fans.
"""
from dataclasses import dataclass

from ._levelcheck import ok26
from ._acc import Acc, merge, run_deep
from ._region import Region
from .errors import ContractError, ProofStepError
from .plane import BoundaryContext, NearTriangulation
from .verify import check_26, conditions_26

__all__ = ["FanStructure", "build_fan", "check_26", "decompose26", "swap_root"]


@dataclass(frozen=True)
class FanStructure:
    """Data of the chordless case where z is far from x and y.

    ``P`` runs along the boundary from p1 (the neighbour of y other than x) to
    z; ``Q`` is the boundary path from y to z' of the block of G - V(P)
    holding x and y.  ``markers`` are the inner vertices of Q with at least
    two neighbours on P, and ``bridges`` lists p1..p_{k+1}.  ``cycles[i]`` is
    the boundary of the piece between consecutive bridges, in boundary order.
    """

    P: tuple
    Q: tuple
    markers: tuple
    bridges: tuple
    cycles: tuple
    block_cycle: tuple

    @property
    def k(self):
        return len(self.markers)


def _swap(acc, x, y):
    """Turn a decomposition rooted at (x, y, z) into one rooted at (y, x, z)."""
    hx = acc.hnbrs(x)
    if not hx:
        acc.reverse(x, y)
        return acc
    (w,) = hx
    acc.unarc(x, y)
    acc.unarc(w, y)
    acc.arc(w, x)
    acc.arc(y, x)
    acc.unhedge(w, x)
    acc.hedge(w, y)
    return acc


def _turn(region, u, v, removed):
    """Next vertex of the outer walk of region - removed after the dart (u, v)."""
    emb = region.emb
    rot = emb.rot[v]
    d = len(rot)
    i = emb.idx[v][u]
    boundary = region.on_boundary(v)
    for step in range(1, d + 1):
        w = rot[(i - step) % d]
        if w in removed or w in emb.dead:
            continue
        if boundary and not region.in_fan(v, w):
            continue
        return w
    raise ProofStepError(f"vertex {v} has no live neighbour")


def _outer_walk(region, a, e, removed):
    """Simple path from a to e along the outer face of region - removed."""
    prev, cur = region.pred(a), a
    path = [a]
    where = {a: 0}
    limit = 4 * sum(len(r) for r in region.emb.rot.values()) + 4
    while cur != e:
        limit -= 1
        if limit < 0:
            raise ProofStepError("outer walk of the fan block does not close")
        prev, cur = cur, _turn(region, prev, cur, removed)
        j = where.get(cur)
        if j is None:
            where[cur] = len(path)
            path.append(cur)
        else:
            for v in path[j + 1:]:
                del where[v]
            del path[j + 1:]
    return path


def _fan(region, x, y, z):
    fwd = region.succ(x) == y
    step = region.succ if fwd else region.pred
    P = []
    v = step(y)
    while v != z:
        if v == x:
            raise ContractError("z is not on the far side of y")
        P.append(v)
        v = step(v)
    P.append(z)
    zp = step(z)
    if len(P) < 2 or zp in (x, y):
        raise ContractError("fan construction needs z away from x and y")
    pset = set(P)
    a, e = (y, zp) if fwd else (zp, y)
    walk = _outer_walk(region, a, e, pset)
    Q = walk if fwd else walk[::-1]
    part = [e]
    while part[-1] != a:
        part.append(region.succ(part[-1]))
    block = part + walk[1:-1]
    if len(set(block)) != len(block):
        raise ProofStepError("the block boundary of G - V(P) is not a cycle")
    if len(Q) < 3:
        raise ProofStepError("Q has fewer than three vertices")

    pidx = {p: i for i, p in enumerate(P)}
    pn = {q: {w for w in region.neighbors(q) if w in pset} for q in Q}
    if pn[y] != {P[0]}:
        raise ProofStepError(f"y should see only p1 on P, sees {sorted(pn[y])}")
    markers = [q for q in Q[1:-1] if len(pn[q]) >= 2]
    if not markers:
        raise ProofStepError("no vertex of Q sees two vertices of P")
    qs = [y] + markers + [zp]
    bridges = [P[0]] + [max(pn[q], key=pidx.__getitem__) for q in markers]
    for i in range(1, len(qs)):
        b = bridges[i - 1]
        if b not in pn[qs[i]] or b not in pn[qs[i - 1]]:
            raise ProofStepError(f"bridge {b} is not adjacent to {qs[i - 1]} and {qs[i]}")
    if bridges[-1] != z:
        raise ProofStepError(f"last bridge is {bridges[-1]}, expected z={z}")
    qpos = {q: i for i, q in enumerate(Q)}
    for j in range(len(qs) - 1):
        for q in Q[qpos[qs[j]] + 1:qpos[qs[j + 1]]]:
            if pn[q] != {bridges[j]}:
                raise ProofStepError(f"{q} should see exactly {bridges[j]} on P")
    cycles = []
    for i in range(len(markers)):
        seg = P[pidx[bridges[i]]:pidx[bridges[i + 1]] + 1]
        if len(seg) < 2:
            raise ProofStepError("bridges are not strictly increasing along P")
        cycles.append(tuple((seg if fwd else seg[::-1]) + [markers[i]]))
    return FanStructure(tuple(P), tuple(Q), tuple(markers), tuple(bridges),
                        tuple(cycles), tuple(block))


class _Solver:
    def __init__(self, check_levels):
        self.check = check_levels

    def solve(self, R, x, y, z):
        acc = self._solve(R, x, y, z)
        if self.check:
            adj = R.adjacency()
            if not ok26(adj, R.cycle, x, y, z, acc):
                rep = conditions_26(adj, R.cycle, x, y, z, acc.pair())
                raise ProofStepError(f"level {R.cycle} rooted ({x},{y},{z}): " + "; ".join(rep.lines()))
        return acc

    def swapped(self, R, x, y, z):
        return _swap(self.solve(R, y, x, z), y, x)

    def _solve(self, R, x, y, z):
        if R.is_triangle():
            acc = Acc()
            acc.arc(x, y)
            acc.arc(z, y)
            acc.hedge(x, z)
            return acc
        if len(R) == 3:
            return self.case1(R, x, y, z)
        chord = self.pick_chord(R, x, y, z)
        if chord is not None:
            return self.case2(R, x, y, z, chord)
        if z in (R.succ(x), R.pred(x)):
            return self.swapped(R, x, y, z)
        if z in (R.succ(y), R.pred(y)):
            return self.case31(R, x, y, z)
        return self.case32(R, x, y, z)

    @staticmethod
    def pick_chord(R, x, y, z):
        pos = R.pos
        k = len(R)
        for a, b in R.chords():
            if {a, b} & {x, y, z}:
                return a, b
            i, span = pos[a], (pos[b] - pos[a]) % k
            side = lambda v: (pos[v] - i) % k <= span
            if side(z) != side(x):
                return a, b
        return None

    def case1(self, R, x, y, z):
        inner = R.fan(z)[1:-1]
        sub = R.without(z)
        acc = self.solve(sub, x, y, min(inner))
        hx = acc.hnbrs(x)
        if not hx:
            for u in inner:
                acc.arc(u, z)
        else:
            (s,) = hx
            acc.unhedge(s, x)
            acc.arc(s, x)
            for u in inner:
                if u != s:
                    acc.arc(u, z)
            acc.hedge(s, z)
        acc.arc(z, y)
        acc.hedge(x, z)
        return acc

    def case2(self, R, x, y, z, chord):
        a, b = chord
        RA, RB = R.split(a, b)
        R1, R2 = (RA, RB) if (x in RA.pos and y in RA.pos) else (RB, RA)

        def b1(w):
            return sum(1 for r in (R1.pred(w), R1.succ(w)) if r in (x, y))

        if z not in R1.pos:
            u, v = (b, a) if b in (x, y) else (a, b)
            if u == x:
                return self.swapped(R, x, y, z)
            acc1 = self.solve(R1, x, y, v)
            if acc1.hd(u) <= 4 - b1(u) and y != u:
                root = (u, v)
            else:
                root = (v, u)
            acc2 = self.solve(R2, root[0], root[1], z)
        elif z in (a, b):
            v = z
            u = b if a == z else a
            if u == x:
                return self.swapped(R, x, y, z)
            acc1 = self.solve(R1, x, y, z)
            zdd = R2.succ(z) if R2.succ(z) != u else R2.pred(z)
            if acc1.hd(u) <= 4 - b1(u) and u != y:
                root = (u, v)
            else:
                root = (v, u)
            acc2 = self.solve(R2, root[0], root[1], zdd)
        else:
            if x in (a, b):
                return self.swapped(R, x, y, z)
            u = y
            v = b if a == y else a
            acc1 = self.solve(R1, x, y, z)
            root = (v, u)
            acc2 = self.solve(R2, v, u, min(w for w in R2.cycle if w not in (u, v)))
        acc2.unarc(*root)
        acc = merge(acc1, acc2)
        if z in (a, b) and u != y:
            self._forbidden_22(R, x, y, z, R1, acc)
        return acc

    @staticmethod
    def _forbidden_22(R, x, y, z, R1, acc):
        zp = R.succ(z) if R.succ(z) in R1.pos else R.pred(z)

        def b(w):
            return sum(1 for r in (R.pred(w), R.succ(w)) if r in (x, y))

        if acc.hd(z) == 4 - b(z) and acc.hd(zp) == 5 - b(zp):
            raise ProofStepError("chord case at z reached the excluded degree combination")

    def case31(self, R, x, y, z):
        zp = R.succ(z) if R.pred(z) == y else R.pred(z)
        inner = R.fan(z)[1:-1]
        acc = self.solve(R.without(z), x, y, zp)
        hx = acc.hnbrs(x)
        s = None
        if hx:
            (s,) = hx
            if s not in inner:
                raise ProofStepError(f"H-neighbour {s} of x is not on the fan of {z}")
            acc.unhedge(s, x)
            acc.arc(s, x)
            acc.hedge(s, z)
        acc.arc(z, y)
        for u in inner:
            if u != s:
                acc.arc(u, z)
        acc.hedge(z, zp)
        return acc

    def case32(self, R, x, y, z):
        fs = _fan(R, x, y, z)
        P, Q, qs = fs.P, fs.Q, (y,) + fs.markers + (fs.Q[-1],)
        ps = fs.bridges
        zp = Q[-1]
        acc = self.solve(Region(R.emb, fs.block_cycle), x, y, zp)
        hx = acc.hnbrs(x)
        s = None
        if hx:
            (s,) = hx
            if s not in Q[1:-1]:
                raise ProofStepError(f"H-neighbour {s} of x is not inside Q")
        for i, cyc in enumerate(fs.cycles, start=1):
            pi, pn, qi = ps[i - 1], ps[i], qs[i]
            acci = self.solve(Region(R.emb, cyc), pn, qi, pi)
            acci.reverse(pi, qi)
            acci.unarc(pn, qi)
            acci.hedge(pn, qi)
            acc = merge(acc, acci)
        acc.arc(P[0], y)
        qpos = {q: i for i, q in enumerate(Q)}
        for j in range(len(qs) - 1):
            for q in Q[qpos[qs[j]] + 1:qpos[qs[j + 1]]]:
                acc.arc(q, ps[j])
        acc.hedge(z, zp)
        if s is not None:
            acc.unhedge(s, x)
            acc.arc(s, x)
            i = next(j for j in range(len(qs) - 1) if qpos[qs[j]] <= qpos[s] <= qpos[qs[j + 1]])
            if i >= 1:
                acc.reverse(s, ps[i])
            else:
                acc.unarc(s, ps[0])
                acc.hedge(s, ps[0])
        return acc


def _root(t, x, y, z):
    if not isinstance(t, NearTriangulation):
        raise ContractError("expected a NearTriangulation")
    return BoundaryContext.of(t, x, y, z)


def decompose26(t, x, y, z, check_levels=True):
    """A (2,6)-decomposition of ``t`` rooted at (x, y, z).

    With ``check_levels`` every recursive piece is checked against the five
    rooted conditions; a failure raises :class:`ProofStepError`.
    """
    _root(t, x, y, z)
    solver = _Solver(check_levels)
    acc = run_deep(solver.solve, t.region(), x, y, z)
    return acc.pair()


def swap_root(t, ctx, p):
    """Re-root a decomposition from (x, y, z) to (y, x, z)."""
    rep = check_26(t, ctx, p)
    if not rep:
        raise ContractError("input pair is not a valid (2,6)-decomposition: " + "; ".join(rep.lines()))
    return _swap(Acc.from_pair(p), ctx.x, ctx.y).pair()


def build_fan(t, x, y, z):
    """The fan structure used when z is not next to x or y and no chord interferes."""
    _root(t, x, y, z)
    R = t.region()
    if len(R) < 4:
        raise ContractError("the boundary cycle needs at least four vertices")
    if _Solver.pick_chord(R, x, y, z) is not None:
        raise ContractError("a chord separates or touches the root vertices")
    if z in (R.succ(x), R.pred(x), R.succ(y), R.pred(y)):
        raise ContractError("z is a boundary neighbour of x or y")
    return _fan(R, x, y, z)
