import pytest

from planar_dh.errors import StructureError
from planar_dh.plane import NearTriangulation, PlaneGraph


def near(outer, inner):
    """Near triangulation from its outer walk and inner faces (each walked against the outer one)."""
    return NearTriangulation(PlaneGraph.from_faces(list(inner) + [tuple(outer)]), outer)


def wheel(k, hub=None):
    """Rim 1..k walked as the outer face, hub k+1 inside."""
    c = hub or k + 1
    return near(range(1, k + 1), [(i % k + 1, i, c) for i in range(1, k + 1)])


@pytest.fixture
def diamond():
    return near((1, 2, 3, 4), [(1, 3, 2), (1, 4, 3)])


@pytest.fixture
def k4():
    return near((1, 2, 3), [(2, 1, 4), (3, 2, 4), (1, 3, 4)])


def punctured(t, v):
    """``t - v`` as a near triangulation whose outer face is the old link of v, or None."""
    g = t.graph
    rot = {u: [w for w in g.rotation[u] if w != v] for u in g.vertices if u != v}
    link = set(g.rotation[v])
    h = PlaneGraph(rot)
    for f in h.faces():
        if set(f.vertices) == link and len(f) == len(link):
            try:
                return NearTriangulation(h, f.vertices)
            except StructureError:
                return None
    return None


def instances(ns, seeds, holes=1):
    """Stacked and flipped triangulations plus punctured copies, which have long boundaries and chords."""
    from planar_dh.gen import flipped_triangulation, stacked_triangulation
    out = []
    for n in ns:
        for seed in seeds:
            for t in (stacked_triangulation(n, seed), flipped_triangulation(n, seed)):
                out.append(t)
                by_degree = sorted(t.graph.vertices, key=lambda v: (-t.graph.degree(v), v))
                for v in by_degree[:holes]:
                    if t.graph.degree(v) >= 4:
                        s = punctured(t, v)
                        if s is not None:
                            out.append(s)
    return out


# -- acceptance report ---------------------------------------------------------------

ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: the numbered acceptance criteria (slow)")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in range(1, 9):
        if num in ACCEPTANCE:
            terminalreporter.write_line(ACCEPTANCE[num])
        else:
            terminalreporter.write_line(f"criterion {num}: NOT RUN")
