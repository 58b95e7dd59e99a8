import pytest
from hypothesis import given, settings, strategies as st

from conftest import instances, near
from planar_dh.decomp26 import decompose26
from planar_dh.errors import ContractError, GraphFormatError
from planar_dh.gen import double_wheel, flipped_triangulation, named_solid, stacked_triangulation, stellate
from planar_dh.io import emit_decomposition, emit_graph, parse_decomposition, parse_graph, read_graph, write_text
from planar_dh.plane import NearTriangulation, PlaneGraph
from planar_dh.verify import DecompPair, check_dh

K3_TEXT = "3\n1: 2 3\n2: 3 1\n3: 1 2\nouter: 1 2 3\n"


def test_k3_example():
    t = parse_graph(K3_TEXT)
    assert isinstance(t, NearTriangulation)
    assert t.outer == (1, 2, 3) and t.graph.m == 3
    assert parse_graph(K3_TEXT.encode()).outer == (1, 2, 3)


def test_missing_reciprocal_names_vertex_2():
    with pytest.raises(GraphFormatError) as e:
        parse_graph("2\n1: 2\n2:\n")
    assert "vertex 2" in str(e.value) and e.value.line == 2


@pytest.mark.parametrize("text,line", [
    ("", None),
    ("x\n", 1),
    ("3 4\n", 1),
    ("3\n1: 2 3\n2: 3 1\n", None),
    ("2\n1: 2\n1: 2\n", 3),
    ("2\n1: 3\n2: 1\n", 2),
    ("2\n1: 2 2\n2: 1\n", 2),
    ("1\n1: 1\n", 2),
    ("3\n1: 2 3\nouter: 1 2 3\n2: 3 1\n3: 1 2\n", 4),
    ("3\n1: 2 3\n2: 3 1\n3: 1 2\nouter: 1 2\n", 5),
    ("3\n1 2 3\n", 2),
])
def test_format_errors(text, line):
    with pytest.raises(GraphFormatError) as e:
        parse_graph(text)
    assert e.value.line == line


def test_outer_must_be_a_face():
    t = "4\n1: 2 3 4\n2: 3 1 4\n3: 1 2 4\n4: 1 3 2\nouter: 1 2 3 4\n"
    with pytest.raises(GraphFormatError):
        parse_graph(t)


def test_comments_and_blank_lines():
    t = "# K3\n3\n\n1: 2 3   # first\n2: 3 1\n3: 1 2\nouter: 1 2 3\n"
    assert emit_graph(parse_graph(t)) == K3_TEXT


def test_without_outer_line_gives_a_plane_graph():
    g = parse_graph("3\n1: 2 3\n2: 3 1\n3: 1 2\n")
    assert isinstance(g, PlaneGraph) and emit_graph(g) == "3\n1: 2 3\n2: 3 1\n3: 1 2\n"


def test_isolated_vertex_line():
    g = parse_graph("1\n1:\n")
    assert g.n == 1 and emit_graph(g) == "1\n1:\n"


def dense(t):
    """Relabel a graph with id gaps onto 1..n, keeping every rotation."""
    g = t.graph if isinstance(t, NearTriangulation) else t
    new = {v: i for i, v in enumerate(g.vertices, start=1)}
    h = PlaneGraph({new[v]: [new[u] for u in g.rotation[v]] for v in g.vertices})
    return NearTriangulation(h, [new[v] for v in t.outer]) if g is not t else h


def test_gaps_are_refused():
    with pytest.raises(ContractError):
        emit_graph(PlaneGraph({1: [3], 3: [1]}))


CORPUS = ([dense(t) for t in instances(range(4, 60, 7), range(3), holes=2)]
          + [stacked_triangulation(n, 11) for n in (3, 100, 400)]
          + [named_solid(s) for s in ("tetrahedron", "octahedron", "icosahedron")]
          + [double_wheel(k) for k in (3, 9, 40)]
          + [stellate(named_solid("icosahedron"))])


@pytest.mark.parametrize("g", CORPUS, ids=lambda g: f"n{g.n}")
def test_round_trip(g):
    text = emit_graph(g)
    back = parse_graph(text)
    assert emit_graph(back) == text
    assert type(back) is type(g)
    if isinstance(g, NearTriangulation):
        assert back.outer == g.outer


def test_lf_only(tmp_path):
    path = tmp_path / "k3.rot"
    write_text(path, K3_TEXT)
    assert path.read_bytes() == K3_TEXT.encode()
    assert read_graph(path).outer == (1, 2, 3)


# -- .dh ----------------------------------------------------------------------------

def test_k3_base_pair():
    t = near((1, 2, 3), [(1, 3, 2)])
    assert emit_decomposition(decompose26(t, 1, 2, 3), 2, 6) == "2 6\nD 1 2\nD 3 2\nH 1 3\n"


def test_empty_h_and_comments():
    p = DecompPair([(2, 1), (3, 1), (3, 2)])
    assert emit_decomposition(p, 3, 2, comments=["root 1 2 3"]) == "3 2\n# root 1 2 3\nD 2 1\nD 3 1\nD 3 2\n"


@pytest.mark.parametrize("text,line", [
    ("", None),
    ("2\n", 1),
    ("2 6\nX 1 2\n", 2),
    ("2 6\nD 1 1\n", 2),
    ("2 6\nD 1 2\nH 1 2\n", 3),
    ("2 6\nH 3 1\n", 2),
    ("2 6\nD 1 x\n", 2),
])
def test_dh_errors(text, line):
    with pytest.raises(GraphFormatError) as e:
        parse_decomposition(text)
    assert e.value.line == line


@settings(max_examples=25, deadline=None)
@given(st.integers(4, 80), st.integers(0, 2**32))
def test_dh_round_trip_keeps_verdict(n, seed):
    t = flipped_triangulation(n, seed)
    x, y, z = t.outer
    p = decompose26(t, x, y, z)
    text = emit_decomposition(p, 2, 6)
    d, h, q = parse_decomposition(text)
    assert (d, h, q) == (2, 6, p)
    assert emit_decomposition(q, d, h) == text
    assert check_dh(t, q, d, h).passed
