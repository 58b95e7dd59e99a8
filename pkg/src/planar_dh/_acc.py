"""Mutable decomposition accumulator and a deep-recursion runner."""
import sys
import threading

from .errors import ProofStepError
from .verify import DecompPair


class Acc:
    """Arcs and hedges as adjacency sets; cheap degree queries while recursing."""

    __slots__ = ("out", "h")

    def __init__(self):
        self.out = {}
        self.h = {}

    def arc(self, u, v):
        self.out.setdefault(u, set()).add(v)

    def has_arc(self, u, v):
        return v in self.out.get(u, ())

    def unarc(self, u, v):
        s = self.out.get(u)
        if not s or v not in s:
            raise ProofStepError(f"expected arc ({u},{v}) is missing")
        s.remove(v)

    def reverse(self, u, v):
        self.unarc(u, v)
        self.arc(v, u)

    def hedge(self, u, v):
        self.h.setdefault(u, set()).add(v)
        self.h.setdefault(v, set()).add(u)

    def unhedge(self, u, v):
        if v not in self.h.get(u, ()):
            raise ProofStepError(f"expected H-edge {u}{v} is missing")
        self.h[u].remove(v)
        self.h[v].remove(u)

    def od(self, v):
        return len(self.out.get(v, ()))

    def hd(self, v):
        return len(self.h.get(v, ()))

    def hnbrs(self, v):
        return self.h.get(v, set())

    def size(self):
        return len(self.out) + len(self.h)

    def pair(self):
        arcs = [(u, v) for u, s in self.out.items() for v in s]
        hedges = [(u, v) for u, s in self.h.items() for v in s if u < v]
        return DecompPair(arcs, hedges)

    @classmethod
    def from_pair(cls, p):
        acc = cls()
        for u, v in p.arcs:
            acc.arc(u, v)
        for u, v in p.hedges:
            acc.hedge(u, v)
        return acc


def merge(a, b):
    """Union of two accumulators; consumes both, returns the survivor."""
    if a.size() < b.size():
        a, b = b, a
    for src, dst in ((b.out, a.out), (b.h, a.h)):
        for v, s in src.items():
            cur = dst.get(v)
            if cur is None:
                dst[v] = s
            else:
                cur |= s
    return a


def run_deep(fn, *args):
    """Run ``fn`` in a thread with a large stack so recursion depth ~ |V| is safe."""
    result = {}

    def target():
        try:
            result["value"] = fn(*args)
        except BaseException as exc:  # re-raised in the caller's thread
            result["error"] = exc

    old_limit = sys.getrecursionlimit()
    old_size = threading.stack_size()
    sys.setrecursionlimit(max(old_limit, 200000))
    try:
        threading.stack_size(512 * 1024 * 1024)
        th = threading.Thread(target=target)
        th.start()
        th.join()
    finally:
        threading.stack_size(old_size)
        sys.setrecursionlimit(old_limit)
    if "error" in result:
        raise result["error"]
    return result["value"]
