"""Command-line entry point: ``stacked-sr <command> ...``.

Exit codes:
  0  success
  1  verify found counterexamples
  2  input could not be parsed (JSON position reported)
  3  input violates a precondition (offending block named)
  4  a size cap was exceeded (raise it with STACKED_SR_MAX_SIZE)
"""

import argparse
import json
import sys

from stacked_sr import ball, limits, regular, verify
from stacked_sr import graph_core as gc
from stacked_sr import partitions as pt
from stacked_sr import simplicial as sc
from stacked_sr import sr_ideal as sr
from stacked_sr import tree_ideal as ti

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_CAP = 4

FORMATS = ("json", "text", "dot", "algebra")


class ParseFailure(Exception):
    pass


def _read_json(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseFailure(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseFailure(
            f"{path}:{exc.lineno}:{exc.colno}: {exc.msg} (char {exc.pos})"
        ) from None


def _load(path, build):
    data = _read_json(path)
    try:
        return build(data)
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseFailure(f"{path}: {exc}") from None


def load_tree(path):
    return _load(path, gc.tree_from_dict)


def load_complex(path):
    return _load(path, sc.complex_from_dict)


def load_partition(path):
    return _load(path, pt.partition_from_lists)


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True)


def _names(face):
    return [sr.var_name(v) for v in gc.sort_labels(face)]


def _facet_text(face):
    return " ".join(_names(face))


# --- commands -------------------------------------------------------------------


def cmd_tree_ideal(args, out):
    t = load_tree(args.tree)
    ideal = ti.tree_ideal(t)
    facets = ti.tree_ideal_facets(t)
    if args.format == "json":
        out.write(_dump({
            "generators": [_names(g) for g in ideal.generators],
            "facets": {str(v): _names(f) for v, f in facets.items()},
        }) + "\n")
    elif args.format == "algebra":
        out.write(sr.ideal_to_algebra(ideal))
    elif args.format == "dot":
        out.write(gc.tree_to_dot(t))
    else:
        out.write(f"# generators ({len(ideal)})\n")
        out.write(sr.ideal_to_text(ideal))
        out.write(f"# facets ({len(facets)})\n")
        for v, f in facets.items():
            out.write(f"F_{v}: {_facet_text(f)}\n")
    return EXIT_OK


def _check_cover(p, universe, what):
    missing = sorted(set(universe) - p.universe, key=gc.label_key)
    extra = sorted(p.universe - set(universe), key=gc.label_key)
    if missing or extra:
        raise sr.PreconditionError(
            f"partition does not cover the {what}: missing {missing}, unknown {extra}"
        )


def _vertex_quotient(t, q, args, out):
    _check_cover(q, t.vertices, "vertices")
    complex_, failing = regular.stepwise_quotient(q, t)
    basis = regular.space_of_vertex_partition(q, t)
    record = {
        "partition": q.to_lists(),
        "differences": [str(d) for d in basis.differences],
        "squarefree": complex_ is not None,
    }
    if complex_ is not None:
        record["facets"] = [_names(f) for f in complex_.facets]
    else:
        record["failing_difference"] = str(failing)
        record["generators"] = [
            sr.monomial_text(g) for g in regular.projected_generators(q, t)
        ]
    if args.format == "json":
        out.write(_dump(record) + "\n")
        return EXIT_OK
    out.write(f"# differences ({len(record['differences'])})\n")
    for d in record["differences"]:
        out.write(d + "\n")
    if complex_ is not None:
        out.write(f"# squarefree quotient, facets ({len(complex_.facets)})\n")
        for f in complex_.facets:
            out.write(_facet_text(f) + "\n")
    else:
        out.write(f"# not squarefree: {failing} is a zero divisor on the way\n")
        out.write(f"# projected generators ({len(record['generators'])})\n")
        for g in record["generators"]:
            out.write(g + "\n")
    return EXIT_OK


def cmd_quotient(args, out):
    t = load_tree(args.tree)
    p = load_partition(args.partition)
    if args.vertex_partition:
        return _vertex_quotient(t, p, args, out)
    _check_cover(p, t.edge_ids, "edges")
    if args.boundary:
        b = ball.boundary_ideal(t, p)
    qc = ball.quotient_complex(t, p)
    facets = [qc.facet_index[v] for v in t.vertices]
    if args.format == "json":
        record = {
            "partition": p.to_lists(),
            "facets": {str(v): _names(qc.facet_index[v]) for v in t.vertices},
        }
        if args.boundary:
            record["boundary_generators"] = [_names(g) for g in b.ideal.generators]
            record["boundary_facets"] = [_names(f) for f in b.complex.facets]
        out.write(_dump(record) + "\n")
        return EXIT_OK
    if args.format == "algebra":
        ideal = b.ideal if args.boundary else sr.sr_ideal_of(qc.complex)
        out.write(sr.ideal_to_algebra(ideal))
        return EXIT_OK
    if args.format == "dot":
        out.write(gc.hypertree_to_dot(ball.quotient_hypertree(t, p)))
        return EXIT_OK
    out.write(f"# quotient facets ({len(facets)}), dimension {qc.dimension()}\n")
    for v in t.vertices:
        out.write(f"F_{v}: {_facet_text(qc.facet_index[v])}\n")
    if args.boundary:
        out.write(f"# boundary generators ({len(b.ideal)})\n")
        out.write(sr.ideal_to_text(b.ideal))
        out.write(f"# boundary facets ({len(b.complex.facets)})\n")
        for f in b.complex.facets:
            out.write(_facet_text(f) + "\n")
        if b.complex.dimension() == 1:
            cycle = ball.cycle_order(b.complex)
            if cycle is not None:
                out.write("# boundary cycle: " + " ".join(map(sr.var_name, cycle)) + "\n")
    return EXIT_OK


def cmd_separate(args, out):
    x = load_complex(args.complex)
    m = sr.separated_model(x)
    record = {
        "joins": [[k, r] for k, r in m.joins],
        "tree": m.tree.to_dict(),
        "vertex_map": {
            sc.label_text(v): m.vertex_to_evar[v].name
            for v in gc.sort_labels(m.vertex_to_evar)
        },
        "facets": [[sc.label_text(v) for v in gc.sort_labels(f)] for f in m.complex.facets],
    }
    if args.format == "json":
        out.write(_dump(record) + "\n")
    elif args.format == "dot":
        out.write(gc.tree_to_dot(m.tree))
    elif args.format == "algebra":
        out.write(sr.ideal_to_algebra(sr.sr_ideal_of(m.complex)))
    else:
        out.write(f"# joins ({len(m.joins)}), kept then removed\n")
        for k, r in m.joins:
            out.write(f"{k} {r}\n")
        out.write("# tree\n")
        for e in m.tree.edge_ids:
            out.write(f"{e}: {m.tree.tail(e)} -> {m.tree.head(e)}\n")
        out.write("# vertex map\n")
        for v, name in record["vertex_map"].items():
            out.write(f"{v} {name}\n")
    return EXIT_OK


def cmd_bijection(args, out):
    t = load_tree(args.tree)
    p = load_partition(args.partition)
    if args.direction == "v2e":
        _check_cover(p, t.vertices, "vertices")
        result = pt.vertex_to_edge_partition(p, t.tree)
    else:
        _check_cover(p, t.edge_ids, "edges")
        result = pt.edge_to_vertex_partition(p, t.tree)
    if args.format == "json":
        out.write(json.dumps(result.to_lists()) + "\n")
    else:
        for block in result.to_lists():
            out.write(" ".join(block) + "\n")
    return EXIT_OK


def cmd_enumerate(args, out):
    if args.polygon is not None:
        census = ball.enumerate_polygon_triangulations(args.polygon)
        if args.format == "text":
            for tr in census:
                out.write(" ".join("-".join(map(str, f)) for f in tr.triangles) + "\n")
            out.write(f"# {len(census)} triangulations of the {args.polygon}-gon\n")
        else:
            for tr in census:
                out.write(json.dumps(tr.to_record(), sort_keys=True) + "\n")
        return EXIT_OK
    trees = (gc.tree_shapes(args.trees) if args.shapes
             else gc.enumerate_trees(args.trees))
    for t in trees:
        if args.format == "dot":
            out.write(gc.tree_to_dot(t))
        elif args.format == "text":
            out.write(" ".join(f"{u}-{w}" for u, w in t.edges.values()) + "\n")
        else:
            out.write(json.dumps(t.to_dict(), sort_keys=True) + "\n")
    return EXIT_OK


def cmd_verify(args, out):
    if args.list:
        for name in verify.suite_names():
            out.write(name + "\n")
        return EXIT_OK
    try:
        suites = verify.resolve(args.suite)
    except KeyError:
        raise ParseFailure(
            f"unknown suite {args.suite!r}; try --list"
        ) from None
    verify.set_sampling(args.seed, args.samples)
    failed = 0
    for name, run in suites:
        bad = sorted(run(args.max_size))
        status = "pass" if not bad else f"FAIL ({len(bad)} counterexamples)"
        out.write(f"{name}: {status}\n")
        for line in bad[: args.show]:
            out.write(f"  {line}\n")
        failed += bool(bad)
    return EXIT_FAILED if failed else EXIT_OK


def cmd_export(args, out):
    data = _read_json(args.input)
    is_tree = isinstance(data, dict) and "edges" in data
    try:
        obj = gc.tree_from_dict(data) if is_tree else sc.complex_from_dict(data)
    except ValueError as exc:
        raise ParseFailure(f"{args.input}: {exc}") from None
    fmt = args.format
    if is_tree:
        if fmt == "json":
            out.write(_dump(obj.to_dict()) + "\n")
        elif fmt == "dot":
            out.write(gc.tree_to_dot(obj))
        elif fmt == "algebra":
            out.write(sr.ideal_to_algebra(ti.tree_ideal(obj)))
        else:
            out.write(sr.ideal_to_text(ti.tree_ideal(obj)))
        return EXIT_OK
    if fmt == "json":
        out.write(_dump(obj.to_dict()) + "\n")
    elif fmt == "dot":
        if not sc.is_stacked(obj):
            raise sr.PreconditionError("dot export of a complex needs a stacked complex")
        names = {f: ",".join(map(sc.label_text, gc.sort_labels(f))) for f in obj.facets}
        out.write(gc.hypertree_to_dot(sc.hypertree_of(obj, names=names)))
    elif fmt == "algebra":
        out.write(sr.ideal_to_algebra(sr.sr_ideal_of(obj)))
    else:
        out.write(obj.to_facet_text())
    return EXIT_OK


# --- parser -----------------------------------------------------------------------


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog="stacked-sr",
        description="Tree ideals, stacked complexes and their quotients.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=(
            "exit codes: 0 ok, 1 verify found counterexamples, 2 parse error,\n"
            "3 precondition failure, 4 size cap exceeded.\n"
            f"{limits.ENV_VAR} overrides every default size cap."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, formats=FORMATS, default="text"):
        p = sub.add_parser(name, help=help_, description=help_)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=formats, default=default)
        return p

    p = add("tree-ideal", cmd_tree_ideal, "print the tree ideal and its facets")
    p.add_argument("tree", help="tree JSON file")

    p = add("quotient", cmd_quotient,
            "quotient of the tree ideal by the span of a partition")
    p.add_argument("tree", help="tree JSON file")
    p.add_argument("partition", help="partition JSON file (edges by default)")
    p.add_argument("--boundary", action="store_true",
                   help="also print the boundary ideal (independent edge blocks)")
    p.add_argument("--vertex-partition", action="store_true",
                   help="read the partition as a vertex partition")

    p = add("separate", cmd_separate, "separated model of a stacked complex")
    p.add_argument("complex", help="complex JSON file")

    p = add("bijection", cmd_bijection,
            "vertex partition <-> edge partition", formats=("json", "text"))
    p.add_argument("direction", choices=("v2e", "e2v"))
    p.add_argument("tree", help="tree JSON file")
    p.add_argument("partition", help="partition JSON file")

    p = add("enumerate", cmd_enumerate, "polygon triangulations or trees",
            default="json")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--polygon", type=_positive, metavar="N")
    group.add_argument("--trees", type=_positive, metavar="K")
    p.add_argument("--shapes", action="store_true",
                   help="one tree per isomorphism class")

    p = add("verify", cmd_verify, "run property suites", formats=("text",))
    p.add_argument("--suite", default="all",
                   help="property, module name or 'all' (default)")
    p.add_argument("--max-size", type=_positive, default=5,
                   help="largest tree size swept (default 5)")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for random corpus sampling (default 0)")
    p.add_argument("--samples", type=int, default=0,
                   help="random trees per size above the exhaustive cap")
    p.add_argument("--show", type=int, default=5,
                   help="counterexamples printed per suite")
    p.add_argument("--list", action="store_true", help="list suite names")

    p = add("export", cmd_export, "convert a tree or complex file",
            default="json")
    p.add_argument("input", help="tree or complex JSON file")
    return parser


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "polygon", None) is not None and args.polygon < 3:
        parser.error("--polygon needs at least 3 corners")
    try:
        return args.func(args, out)
    except ParseFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (pt.DependentBlockError, pt.AdjacentEdgesError, sr.PreconditionError) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except limits.CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
