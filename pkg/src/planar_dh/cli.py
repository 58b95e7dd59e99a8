"""Command line entry point: ``planar-dh <verb> ...``.

Exit codes: 0 success (verified output or feasible with a checked witness),
1 verification failed or infeasible, 2 usage or input error, 3 budget
exceeded.  Every run prints one result record, as ``key: value`` lines or,
with ``--json``, as a JSON object carrying the same fields.
"""
import argparse
import json
import sys

from . import gen
from .decomp26 import check_26, decompose26
from .decomp32 import check_32, choose_z, decompose32
from .decomp41 import decompose41, discharge_audit
from .errors import BudgetExceeded, ContractError, GraphFormatError, ProofStepError, StructureError
from .io import emit_decomposition, emit_graph, parse_decomposition, read_graph, write_text
from .oracle import exact_decide
from .plane import BoundaryContext, NearTriangulation, triangulate
from .verify import check_dh, restrict

__all__ = ["main", "run"]

OK, FAILED, USAGE, BUDGET = 0, 1, 2, 3
PROFILES = {"4,1": (4, 1), "3,2": (3, 2), "2,6": (2, 6)}
SOLIDS = {4: "tetrahedron", 6: "octahedron", 12: "icosahedron"}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _ints(text, what):
    try:
        return [int(w) for w in text.split(",")]
    except ValueError:
        raise _UsageError(f"{what} must be comma-separated integers, got {text!r}") from None


def _profile(text):
    if text not in PROFILES:
        raise _UsageError(f"profile must be one of {', '.join(PROFILES)}")
    return PROFILES[text]


def _near(g):
    """The near triangulation to decompose, plus the original graph when one was built."""
    if isinstance(g, NearTriangulation):
        return g, None
    t, _ = triangulate(g)
    return t, g


def _root(t, spec, profile):
    """Validate --root against the boundary of ``t`` and fill in defaults."""
    if spec is None:
        x, y = t.outer[0], t.outer[1]
        rest = [t.outer[2]] if profile == (2, 6) else []
    else:
        vals = _ints(spec, "--root")
        x, y, rest = vals[0], vals[1] if len(vals) > 1 else None, vals[2:]
        limit = 3 if profile == (2, 6) else 4
        if y is None or len(vals) > limit or (profile == (2, 6) and len(vals) != 3):
            raise _UsageError("--root needs x,y,z for 2,6 and x,y[,z[,z']] for 3,2")
    for v in [x, y] + rest:
        if not t.is_boundary(v):
            raise _UsageError(f"root vertex {v} is not on the outer face")
    if y not in t.boundary_neighbors(x):
        raise _UsageError(f"{x},{y} is not a boundary edge")
    if profile == (3, 2) and not rest:
        rest = [choose_z(t, x, y)]
    return [x, y] + rest


def _decompose(a, rec):
    d, h = _profile(a.profile)
    g = read_graph(a.input)
    comments = []
    if (d, h) == (4, 1):
        if a.root is not None:
            raise _UsageError("--root does not apply to profile 4,1")
        pair, order = decompose41(g)
        base = g.graph if isinstance(g, NearTriangulation) else g
        rep = check_dh(base, pair, d, h)
    else:
        t, orig = _near(g)
        root = _root(t, a.root, (d, h))
        if (d, h) == (2, 6):
            full = decompose26(t, *root)
            rep = check_26(t, BoundaryContext.of(t, *root), full)
        else:
            x, y, z = root[:3]
            zp = root[3] if len(root) > 3 else None
            full = decompose32(t, x, y, z, zp)
            nb = t.boundary_neighbors(z)
            if zp is None and x not in nb and y not in nb:
                zp = nb[0]
                root.append(zp)
            rep = check_32(t, BoundaryContext.of(t, x, y, z, zp), full)
        comments.append("root " + " ".join(map(str, root)))
        rec["root"] = " ".join(map(str, root))
        pair = full
        if orig is not None:
            comments.append(f"triangulated with {t.n - orig.n} added vertices")
            pair = restrict(full, orig)
            rep2 = check_dh(orig, pair, d, h)
            rec["restricted"] = "pass" if rep2 else "FAIL"
            if not rep2:
                rec["conditions"] = rep2.lines()
                return FAILED
    rec["conditions"] = rep.lines()
    if not rep:
        return FAILED
    text = emit_decomposition(pair, d, h, comments)
    if a.output and a.output != "-":
        write_text(a.output, text)
        rec["output"] = a.output
    else:
        sys.stdout.write(text)
        rec["output"] = "-"
    rec["arcs"] = len(pair.arcs)
    rec["hedges"] = len(pair.hedges)
    return OK


def _verify(a, rec):
    g = read_graph(a.input)
    with open(a.decomposition, "rb") as fh:
        d, h, pair = parse_decomposition(fh.read())
    if a.profile is not None and _profile(a.profile) != (d, h):
        raise _UsageError(f"profile {a.profile} does not match the header {d} {h}")
    rec["profile"] = f"{d},{h}"
    if a.root is not None:
        if (d, h) not in ((2, 6), (3, 2)):
            raise _UsageError("--root applies to profiles 2,6 and 3,2 only")
        if not isinstance(g, NearTriangulation):
            raise _UsageError("rooted checks need a near triangulation with an outer line")
        root = _root(g, a.root, (d, h))
        rec["root"] = " ".join(map(str, root))
        check = check_26 if (d, h) == (2, 6) else check_32
        rep = check(g, BoundaryContext.of(g, *root), pair)
    else:
        base = g.graph if isinstance(g, NearTriangulation) else g
        rep = check_dh(base, pair, d, h)
    rec["conditions"] = rep.lines()
    return OK if rep else FAILED


def _oracle(a, rec):
    g = read_graph(a.input)
    base = g.graph if isinstance(g, NearTriangulation) else g
    kw = {"exhaustive": a.exhaustive, "workers": a.workers, "strategy": a.strategy}
    if a.budget is not None:
        kw["node_budget"] = a.budget
    if a.max_edges is not None:
        kw["max_edges"] = a.max_edges
    r = exact_decide(base, a.d, a.h, **kw)
    rec.update(d=a.d, h=a.h, mode=r.mode, nodes=r.nodes, seconds=round(r.seconds, 6))
    if not r.feasible:
        rec["feasible"] = False
        return FAILED
    rep = check_dh(base, r.witness, a.d, a.h)
    rec["feasible"] = True
    rec["conditions"] = rep.lines()
    if not rep:
        return FAILED
    if a.output:
        write_text(a.output, emit_decomposition(r.witness, a.d, a.h))
        rec["witness"] = a.output
    else:
        rec["witness"] = None
    return OK


def _gen(a, rec):
    seed = a.seed
    fam, n = a.family, a.n
    if fam == "stacked":
        g = gen.stacked_triangulation(n, seed)
    elif fam == "solid":
        if n not in SOLIDS:
            raise _UsageError("solid needs --n 4, 6 or 12")
        g = gen.named_solid(SOLIDS[n])
    elif fam == "double-wheel":
        g = gen.double_wheel(n)
    else:
        if a.base == "solid":
            if n not in SOLIDS:
                raise _UsageError("stellate --base solid needs --n 4, 6 or 12")
            t = gen.named_solid(SOLIDS[n])
        else:
            t = gen.stacked_triangulation(n, seed)
        g = gen.stellate(t)
    text = emit_graph(g)
    if a.output and a.output != "-":
        write_text(a.output, text)
        rec["output"] = a.output
    else:
        sys.stdout.write(text)
        rec["output"] = "-"
    rec.update(family=fam, n=g.n, m=(g.graph if isinstance(g, NearTriangulation) else g).m, seed=seed)
    return OK


def _audit(a, rec):
    g = read_graph(a.input)
    table = discharge_audit(g)
    rec["total_initial"] = str(table.total_initial)
    rec["total_final"] = str(table.total_final)
    rec["charges"] = [f"{v} {table.initial[v]} {table.final[v]} d5={table.d5[v]}" for v in sorted(table.initial)]
    cfg = table.config
    rec["config"] = f"{cfg.kind} " + " ".join(map(str, cfg.vertices))
    rec["notes"] = list(table.notes)
    return OK if table.total_final == -12 else FAILED


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for generators (default 0)")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="print only the verdict")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print the record as JSON")

    p = _Parser(prog="planar-dh", parents=[common], description="Degree-restricted decompositions of planar graphs.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("decompose", parents=[common], help="decompose a .rot graph")
    s.add_argument("--profile", required=True, help="4,1 | 3,2 | 2,6")
    s.add_argument("--root", help="x,y,z for 2,6; x,y[,z[,z']] for 3,2")
    s.add_argument("input")
    s.add_argument("-o", "--output", help=".dh path (default stdout)")

    s = sub.add_parser("verify", parents=[common], help="check a .dh file against a .rot graph")
    s.add_argument("--profile", help="expected d,h (default: the .dh header)")
    s.add_argument("--root", help="run the rooted checks for 2,6 or 3,2")
    s.add_argument("input")
    s.add_argument("decomposition")

    s = sub.add_parser("oracle", parents=[common], help="exact search on a small graph")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--h", type=int, required=True)
    s.add_argument("--exhaustive", action="store_true")
    s.add_argument("--budget", type=int, help="node budget")
    s.add_argument("--max-edges", type=int)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--strategy", choices=("auto", "edges", "matching"), default="auto")
    s.add_argument("input")
    s.add_argument("-o", "--output", help="where to write the witness .dh")

    s = sub.add_parser("gen", parents=[common], help="generate an instance")
    s.add_argument("--family", required=True, choices=("stacked", "solid", "double-wheel", "stellate"))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--base", choices=("stacked", "solid"), default="stacked", help="what stellate starts from")
    s.add_argument("-o", "--output", help=".rot path (default stdout)")

    s = sub.add_parser("audit", parents=[common], help="discharging audit of a triangulation")
    s.add_argument("input")
    return p


VERBS = {"decompose": _decompose, "verify": _verify, "oracle": _oracle, "gen": _gen, "audit": _audit}


def _emit(rec, as_json, quiet, stream):
    if as_json:
        stream.write(json.dumps(rec, sort_keys=False) + "\n")
        return
    if quiet:
        stream.write(f"verdict: {rec['verdict']}\n")
        return
    for k, v in rec.items():
        if isinstance(v, list):
            stream.write(f"{k}:\n")
            for item in v:
                stream.write(f"  {item}\n")
        else:
            stream.write(f"{k}: {v}\n")


def run(argv):
    """Run one command and return its exit code."""
    rec = {}
    as_json = "--json" in argv
    quiet = "--quiet" in argv
    doc_on_stdout = False
    try:
        a = _parser().parse_args(argv)
        a.seed = getattr(a, "seed", 0)
        as_json = getattr(a, "json", False)
        quiet = getattr(a, "quiet", False)
        verb = a.verb
        doc_on_stdout = verb in ("decompose", "gen") and a.output in (None, "-")
        rec["command"] = verb
        code = VERBS[verb](a, rec)
    except _UsageError as e:
        code, rec["error"] = USAGE, str(e)
    except (GraphFormatError, StructureError, ContractError) as e:
        code, rec["error"] = USAGE, str(e)
    except OSError as e:
        code, rec["error"] = USAGE, f"{e.filename}: {e.strerror}"
    except BudgetExceeded as e:
        code, rec["error"] = BUDGET, str(e)
    except ProofStepError as e:
        code, rec["error"] = FAILED, f"{type(e).__name__}: {e}"
    rec["verdict"] = {OK: "pass", FAILED: "fail", USAGE: "usage", BUDGET: "budget"}[code]
    rec["exit"] = code
    # keep stdout clean when a document went there
    _emit(rec, as_json, quiet, sys.stderr if doc_on_stdout else sys.stdout)
    return code


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
