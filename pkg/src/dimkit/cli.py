"""Command-line front end.

Subcommands: ``recognize`` (membership with certificates), ``dim`` (exact
dimension parameters with optional witness files), ``reduce`` (the
constructive translations) and ``verify`` (theorem suites). Exit codes are
stable: 0 success/membership, 1 negative answer or suite failure, 2 input
error, 3 capacity or timeout.

File formats: graphs and posets as defined in their modules; multi-graph
witness files separate factors with ``---`` lines; interval representation
files have an ``n`` line followed by ``v l r`` lines; realizer files have
one extension per line (a permutation of 0..n-1). The environment variable
DIMKIT_TIMEOUT_MS overrides the default solver time budget.
"""

import argparse
import sys
from pathlib import Path

from . import reductions, verify
from .errors import CapacityError, InputError, ParseError, SolverTimeout
from .graphs import (
    IntervalRep,
    SplitPartition,
    format_graph,
    parse_graph,
    recognize_interval,
    recognize_split,
    recognize_threshold,
    recognize_unit_interval,
    find_induced_p4,
)
from .posets import format_poset, parse_poset, poset_dimension
from .solvers import (
    KIND_THRESHOLD,
    IntersectionRep,
    boxicity,
    cubicity,
    threshold_dimension,
    threshold_intersection_number,
)

SEPARATOR = "---"


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}")


def parse_witness_graphs(text):
    chunks = []
    current = []
    for line in text.splitlines():
        if line.strip() == SEPARATOR:
            chunks.append("\n".join(current))
            current = []
        else:
            current.append(line)
    chunks.append("\n".join(current))
    return [parse_graph(chunk) for chunk in chunks if chunk.strip()]


def format_witness_graphs(graphs):
    return f"{SEPARATOR}\n".join(format_graph(g) for g in graphs)


def parse_interval_file(text):
    n = None
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 1:
                raise ParseError("expected a single vertex count", lineno)
            n = int(fields[0])
            continue
        if len(fields) != 3:
            raise ParseError(f"expected 'v l r', got {line!r}", lineno)
        v, l, r = (int(f) for f in fields)
        if not 0 <= v < n:
            raise ParseError(f"vertex {v} out of range", lineno)
        seen[v] = (l, r)
    if n is None:
        raise ParseError("missing vertex count line")
    if sorted(seen) != list(range(n)):
        raise ParseError("every vertex needs exactly one interval line")
    return IntervalRep(tuple(seen[v] for v in range(n)))


def format_interval_file(rep):
    lines = [str(rep.n)]
    lines.extend(f"{v} {l} {r}" for v, (l, r) in enumerate(rep.intervals))
    return "\n".join(lines) + "\n"


def parse_realizer_file(text):
    extensions = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            ext = tuple(int(f) for f in line.split())
        except ValueError:
            raise ParseError(f"bad extension line {line!r}", lineno) from None
        extensions.append(ext)
    if not extensions:
        raise ParseError("realizer file has no extensions")
    size = len(extensions[0])
    for ext in extensions:
        if sorted(ext) != list(range(size)):
            raise ParseError("each line must be a permutation of 0..n-1")
    return extensions


def format_realizer_file(extensions):
    return "\n".join(" ".join(map(str, ext)) for ext in extensions) + "\n"


def _emit(out_dir, name, content):
    if out_dir is None:
        sys.stdout.write(f"# {name}\n{content}")
    else:
        path = Path(out_dir) / name
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(content)
        print(f"wrote {path}")


def _print_vertex_map(label, mapping):
    print(label)
    for old, new in mapping:
        print(f"{old} {new}")


# ---------------------------------------------------------------------------
# subcommands


def cmd_recognize(args):
    g = parse_graph(_read(args.file))
    cls = args.cls
    if cls == "split":
        result = recognize_split(g)
        if isinstance(result, SplitPartition):
            print("split")
            print("clique:", " ".join(map(str, result.clique)))
            print("independent:", " ".join(map(str, result.independent)))
            return 0
        print(f"not split; induced {result.kind}:", " ".join(map(str, result.vertices)))
        return 1
    if cls == "threshold":
        order = recognize_threshold(g)
        if order is not None:
            print("threshold")
            print("elimination order:", " ".join(map(str, order)))
            return 0
        split = recognize_split(g)
        if isinstance(split, SplitPartition):
            p4 = find_induced_p4(g)
            print("not threshold; induced P4:", " ".join(map(str, p4)))
        else:
            print(
                f"not threshold; not split; induced {split.kind}:",
                " ".join(map(str, split.vertices)),
            )
        return 1
    if cls == "interval":
        rep = recognize_interval(g)
        if rep is not None:
            print("interval")
            sys.stdout.write(format_interval_file(rep))
            return 0
        print("not interval")
        return 1
    rep = recognize_unit_interval(g)
    if rep is not None:
        print("unit-interval")
        for v, a in enumerate(rep.lefts):
            print(f"{v} {a}")
        return 0
    print("not unit-interval")
    return 1


def cmd_dim(args):
    timeout_ms = None if args.timeout is None else int(args.timeout * 1000)
    kwargs = {"timeout_ms": timeout_ms}
    if args.max_n is not None:
        kwargs["max_n"] = args.max_n
    if args.param == "posetdim":
        p = parse_poset(_read(args.file))
        result = poset_dimension(p, **{k: v for k, v in kwargs.items() if v is not None})
        print(f"posetdim = {result.k}")
        if args.witness:
            Path(args.witness).write_text(format_realizer_file(result.extensions))
        return 0
    g = parse_graph(_read(args.file))
    solver = {
        "boxicity": boxicity,
        "cubicity": cubicity,
        "tdim": threshold_dimension,
        "tint": threshold_intersection_number,
    }[args.param]
    result = solver(g, **{k: v for k, v in kwargs.items() if v is not None})
    print(f"{args.param} = {result.k}")
    if args.witness:
        Path(args.witness).write_text(format_witness_graphs(result.witness.factors))
    return 0


def cmd_reduce(args):
    kind = args.kind
    out = args.out
    if kind == "poset-to-split":
        p = parse_poset(_read(args.inputs[0]))
        built = reductions.poset_to_split_graph(p)
        _emit(out, "split.graph", format_graph(built.graph))
        print("clique:", " ".join(map(str, built.partition.clique)))
        print("independent:", " ".join(map(str, built.partition.independent)))
        _print_vertex_map(
            "clique vertex -> element", list(enumerate(built.clique_element))
        )
        return 0
    if kind == "split-to-gprime":
        h = parse_graph(_read(args.inputs[0]))
        gp = reductions.split_to_gprime(h)
        _emit(out, "gprime.graph", format_graph(gp.graph))
        print(f"trivial_case={str(gp.trivial_case).lower()}")
        _print_vertex_map("copy1: base new", list(enumerate(gp.copy1)))
        if gp.copy2:
            _print_vertex_map("copy2: base new", list(enumerate(gp.copy2)))
        return 0
    if kind == "two-threshold":
        g = parse_graph(_read(args.inputs[0]))
        part = recognize_split(g)
        if not isinstance(part, SplitPartition):
            raise InputError("two-threshold requires a split graph")
        rep = recognize_interval(g)
        if rep is None:
            raise InputError("two-threshold requires a split interval graph")
        g1, g2 = reductions.two_threshold_cover(g, part, rep)
        _emit(out, "factors.graphs", format_witness_graphs([g1, g2]))
        print("factors: 2")
        return 0
    if kind == "realizer-from-cover":
        g = parse_graph(_read(args.inputs[0]))
        factors = parse_witness_graphs(_read(args.inputs[1]))
        part = recognize_split(g)
        if not isinstance(part, SplitPartition):
            raise InputError("realizer-from-cover requires a split graph")
        rep = IntersectionRep(tuple(factors), KIND_THRESHOLD)
        realizer = reductions.realizer_from_threshold_cover(g, part, rep)
        _emit(out, "realizer.txt", format_realizer_file(realizer))
        print(f"extensions: {len(realizer)}")
        return 0
    if kind == "threshold-from-realizer":
        p = parse_poset(_read(args.inputs[0]))
        realizer = parse_realizer_file(_read(args.inputs[1]))
        rep = reductions.threshold_graphs_from_realizer(p, realizer)
        _emit(out, "factors.graphs", format_witness_graphs(rep.factors))
        print(f"factors: {len(rep)}")
        return 0
    if kind == "sandwich-threshold":
        g = parse_graph(_read(args.inputs[0]))
        sup = parse_graph(_read(args.inputs[1]))
        part = recognize_split(g)
        if not isinstance(part, SplitPartition):
            raise InputError("sandwich-threshold requires a split graph")
        h = reductions.threshold_sandwich(g, part, sup)
        _emit(out, "sandwich.graph", format_graph(h))
        return 0
    if kind == "sandwich-interval":
        g = parse_graph(_read(args.inputs[0]))
        sup = parse_graph(_read(args.inputs[1]))
        part = recognize_split(g)
        if not isinstance(part, SplitPartition):
            raise InputError("sandwich-interval requires a split graph")
        sup_rep = recognize_interval(sup)
        if sup_rep is None:
            raise InputError("sandwich-interval requires an interval supergraph")
        h, h_rep = reductions.split_interval_sandwich(g, part, sup_rep)
        _emit(out, "sandwich.graph", format_graph(h))
        _emit(out, "sandwich.intervals", format_interval_file(h_rep))
        return 0
    if kind == "hi-intervals":
        h = parse_graph(_read(args.inputs[0]))
        gp = reductions.split_to_gprime(h)
        _emit(out, "gprime.graph", format_graph(gp.graph))
        print(f"trivial_case={str(gp.trivial_case).lower()}")
        if gp.trivial_case:
            return 0
        from .graphs import complement

        cover = threshold_dimension(h, max_n=max(10, h.n))
        supergraphs = [complement(f) for f in cover.witness.factors]
        normalized = reductions.normalized_threshold_factors(
            gp.base, gp.base_partition, supergraphs
        )
        built = reductions.interval_reps_from_threshold_cover(h, normalized)
        for i, (graph, rep) in enumerate(built, start=1):
            _emit(out, f"factor_{i:02d}.graph", format_graph(graph))
            _emit(out, f"factor_{i:02d}.intervals", format_interval_file(rep))
        print(f"factors: {len(built)}")
        return 0
    raise InputError(f"unknown reduction kind {kind!r}")


def cmd_verify(args):
    report = verify.verify_theorem(
        args.theorem, n_max=args.n_max, samples=args.samples, seed=args.seed
    )
    if args.format == "json":
        print(report.to_json())
    else:
        status = "pass" if report.passed else "FAIL"
        print(
            f"{report.theorem}: {status} "
            f"({report.instances} instances, {len(report.failures)} failures, "
            f"{report.skipped} skipped, {report.elapsed_ms} ms, seed {report.seed})"
        )
        for failure in report.failures:
            print(f"-- {failure['reason']}")
            sys.stdout.write(failure["instance"])
    return 0 if report.passed else 1


REDUCE_KINDS = [
    "poset-to-split",
    "split-to-gprime",
    "two-threshold",
    "realizer-from-cover",
    "threshold-from-realizer",
    "sandwich-threshold",
    "sandwich-interval",
    "hi-intervals",
]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dimkit",
        description="Exact oracles and reductions for boxicity, cubicity, "
        "threshold dimension and poset dimension.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recognize", help="recognize a graph class, with certificates")
    p.add_argument("--class", dest="cls", required=True,
                   choices=["split", "threshold", "interval", "unit-interval"])
    p.add_argument("file")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("dim", help="compute an exact dimension parameter")
    p.add_argument("--param", required=True,
                   choices=["boxicity", "cubicity", "tdim", "tint", "posetdim"])
    p.add_argument("--timeout", type=float, help="time budget in seconds")
    p.add_argument("--max-n", type=int, dest="max_n")
    p.add_argument("--witness", help="write the witness to this file")
    p.add_argument("file")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("reduce", help="run a constructive reduction")
    p.add_argument("kind", choices=REDUCE_KINDS)
    p.add_argument("inputs", nargs="+")
    p.add_argument("--out", help="directory for output files (default: stdout)")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="run a theorem verification suite")
    p.add_argument("theorem")
    p.add_argument("--n-max", type=int, dest="n_max")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SolverTimeout as exc:
        bound = exc.best_upper_bound
        suffix = f"; best verified upper bound: {bound}" if bound is not None else ""
        print(f"timeout: {exc}{suffix}", file=sys.stderr)
        return 3
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
