"""Text formats: rotation systems (.rot) and decompositions (.dh).

.rot::

    n
    v: u1 u2 ... uk        # neighbours of v, clockwise
    outer: v1 v2 ... vk    # optional

.dh::

    d h
    D u v                  # arc u -> v
    H u v                  # edge of H, u < v

Both use LF line endings and single spaces; ``#`` starts a comment.
"""
from .errors import ContractError, GraphFormatError, StructureError
from .plane import NearTriangulation, PlaneGraph
from .verify import DecompPair

__all__ = ["emit_decomposition", "emit_graph", "parse_decomposition", "parse_graph", "read_graph", "write_text"]


def _lines(text):
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise GraphFormatError(None, f"not UTF-8 text: {e}") from None
    for no, raw in enumerate(text.split("\n"), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield no, body


def _ints(no, words):
    try:
        return [int(w) for w in words]
    except ValueError:
        raise GraphFormatError(no, f"expected integers, got {' '.join(words)!r}") from None


def parse_graph(text):
    """Parse a .rot document.

    Returns a :class:`NearTriangulation` when an ``outer:`` line is present
    and every other face is a triangle, otherwise a :class:`PlaneGraph`.  An
    ``outer:`` line that names no face of the embedding is an error.
    """
    lines = list(_lines(text))
    if not lines:
        raise GraphFormatError(None, "empty input")
    no, first = lines[0]
    words = first.split()
    if len(words) != 1:
        raise GraphFormatError(no, "first line must be the vertex count")
    (n,) = _ints(no, words)
    if n < 0:
        raise GraphFormatError(no, "negative vertex count")
    rot, where, outer, outer_no = {}, {}, None, None
    for no, body in lines[1:]:
        head, sep, rest = body.partition(":")
        if not sep:
            raise GraphFormatError(no, "expected 'v: neighbours' or 'outer: cycle'")
        head = head.strip()
        if head == "outer":
            if outer is not None:
                raise GraphFormatError(no, "second outer line")
            outer, outer_no = _ints(no, rest.split()), no
            continue
        if outer is not None:
            raise GraphFormatError(no, "the outer line must come last")
        (v,) = _ints(no, [head])
        if not 1 <= v <= n:
            raise GraphFormatError(no, f"vertex {v} outside 1..{n}")
        if v in rot:
            raise GraphFormatError(no, f"vertex {v} listed twice")
        nb = _ints(no, rest.split())
        for u in nb:
            if not 1 <= u <= n:
                raise GraphFormatError(no, f"neighbour {u} of {v} outside 1..{n}")
        if len(set(nb)) != len(nb):
            raise GraphFormatError(no, f"repeated neighbour in rotation of {v}")
        if v in nb:
            raise GraphFormatError(no, f"self-loop at vertex {v}")
        rot[v], where[v] = nb, no
    missing = [v for v in range(1, n + 1) if v not in rot]
    if missing:
        raise GraphFormatError(None, f"no rotation line for vertex {missing[0]}")
    for v in range(1, n + 1):
        for u in rot[v]:
            if v not in rot[u]:
                raise GraphFormatError(where[v], f"asymmetric rotation: vertex {u} does not list {v}")
    try:
        g = PlaneGraph(rot)
    except StructureError as e:
        raise GraphFormatError(None, str(e)) from None
    if outer is None:
        return g
    walk = {(outer[i], outer[(i + 1) % len(outer)]) for i in range(len(outer))}
    if len(outer) < 3 or not any(set(f.walk) == walk and len(f) == len(outer) for f in g.faces()):
        raise GraphFormatError(outer_no, f"outer cycle {' '.join(map(str, outer))} is not a face")
    try:
        return NearTriangulation(g, outer)
    except StructureError:
        return g


def read_graph(path):
    with open(path, "rb") as fh:
        return parse_graph(fh.read())


def emit_graph(g):
    """Canonical .rot text; a near triangulation also gets its outer line.

    The format needs vertex ids 1..n, so a graph with gaps is refused.
    """
    outer = None
    if isinstance(g, NearTriangulation):
        g, outer = g.graph, g.outer
    if list(g.vertices) != list(range(1, g.n + 1)):
        raise ContractError("vertex ids must be 1..n to be written as .rot")
    out = [str(g.n)]
    for v in g.vertices:
        nb = g.rotation[v]
        out.append(f"{v}:" + "".join(f" {u}" for u in nb))
    if outer is not None:
        out.append("outer: " + " ".join(map(str, outer)))
    return "\n".join(out) + "\n"


def emit_decomposition(p, d, h, comments=()):
    """Canonical .dh text; ``comments`` go right after the header as ``# ...`` lines."""
    out = [f"{d} {h}"]
    out += [f"# {c}" for c in comments]
    out += [f"D {u} {v}" for u, v in p.sorted_arcs()]
    out += [f"H {u} {v}" for u, v in p.sorted_hedges()]
    return "\n".join(out) + "\n"


def parse_decomposition(text):
    """Parse a .dh document into ``(d, h, DecompPair)``."""
    lines = list(_lines(text))
    if not lines:
        raise GraphFormatError(None, "empty input")
    no, first = lines[0]
    words = first.split()
    if len(words) != 2:
        raise GraphFormatError(no, "header must be 'd h'")
    d, h = _ints(no, words)
    arcs, hedges, seen = [], [], set()
    for no, body in lines[1:]:
        words = body.split()
        if len(words) != 3 or words[0] not in ("D", "H"):
            raise GraphFormatError(no, "expected 'D u v' or 'H u v'")
        u, v = _ints(no, words[1:])
        if u == v:
            raise GraphFormatError(no, f"loop at {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(no, f"edge {key[0]} {key[1]} listed twice")
        seen.add(key)
        if words[0] == "D":
            arcs.append((u, v))
        else:
            if u > v:
                raise GraphFormatError(no, "H lines need u < v")
            hedges.append((u, v))
    return d, h, DecompPair(arcs, hedges)


def write_text(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
