"""Command-line interface.

Exit codes: 0 on success, 1 on a domain failure (exhaustion, guard, parse,
integrity), 2 on a usage error.  All output files are written atomically
(temp file + rename in the target directory).  Commands that accept
``--threads`` stay byte-deterministic for any worker count; currently only
montecarlo trials actually run in parallel.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

from . import construct, gadget, montecarlo
from .choose import (
    find_list_coloring,
    is_k_choosable,
    list_chromatic_number,
    parse_lists,
    render_lists,
)
from .errors import Error
from .graphs import parse_graph, render_graph, to_dot
from .minor import DEFAULT_MAX_EXACT, find_kt_minor, hadwiger_number

GRAPH_FILE = "graph.g"
LISTS_FILE = "lists.l"
CERT_FILE = "certificate.json"
GADGET_FILE = "H.g"
REPORT_FILE = "report.json"


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _read_graph(path: str, max_vertices: int = construct.DEFAULT_VERTEX_BUDGET):
    return parse_graph(Path(path).read_text(), max_vertices=max_vertices)


def _model_lines(model) -> str:
    out = []
    for i, verts in enumerate(model.as_vertex_lists(), start=1):
        out.append(f"Z_{i}: " + " ".join(str(v) for v in verts) + "\n")
    return "".join(out)


def _build_gadget_report(h, sample, eps, f, max_exact, work_limit):
    report = gadget.check_cliques_and_nondegree(h, eps)
    report.minor_bound = gadget.minor_bound_for(eps, h.n)
    report.covering, report.covering_witness = gadget.check_covering_property(
        sample, eps, f, work_limit=work_limit
    )
    if h.graph.n <= max_exact:
        t, _ = hadwiger_number(h.graph, max_exact=max_exact)
        report.hadwiger = t
        report.minor_free = "verified" if t <= report.minor_bound else "violated"
    return report


def cmd_gen_gadget(args) -> int:
    params = gadget.GadgetParams(n=args.n, epsilon=args.epsilon, seed=args.seed)
    h, report = gadget.generate_verified_gadget(
        params,
        args.max_attempts,
        args.verify_minor,
        max_exact=args.max_exact,
    )
    graph_text = render_graph(h.graph)
    report_text = json.dumps(report.to_json_dict(), indent=2) + "\n"
    if args.out:
        out = Path(args.out)
        write_atomic(out / GADGET_FILE, graph_text)
        write_atomic(out / REPORT_FILE, report_text)
        print(f"wrote {out / GADGET_FILE} and {out / REPORT_FILE}")
    else:
        sys.stdout.write(graph_text)
        sys.stdout.write(report_text)
    return 0


def cmd_check_gadget(args) -> int:
    g = _read_graph(args.infile, max_vertices=4096)
    if g.n % 2 != 0:
        raise Error(f"gadget graph must have an even vertex count, got {g.n}")
    n = g.n // 2
    h = gadget.BipartitionedGraph(graph=g, n=n, tag="gadget")
    from .graphs import complement, graph_from_edges

    comp = complement(g)
    cross_edges = [
        (u, v) for u, v in comp.edges() if (u < n) != (v < n)
    ]
    sample = gadget.BipartitionedGraph(
        graph=graph_from_edges(g.n, cross_edges), n=n, tag="bipartite-sample"
    )
    f = args.f if args.f is not None else gadget.ceil_frac(1 / args.epsilon)
    report = _build_gadget_report(
        h, sample, args.epsilon, f, args.max_exact, gadget.COVERING_WORK_LIMIT
    )
    text = json.dumps(report.to_json_dict(), indent=2) + "\n"
    if args.out:
        write_atomic(Path(args.out), text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_hadwiger(args) -> int:
    g = _read_graph(args.infile, max_vertices=max(args.max_exact, 4096))
    t, model = hadwiger_number(g, max_exact=args.max_exact)
    if args.json:
        doc = {"t": t, "model": model.as_vertex_lists()}
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write(f"{t}\n")
        sys.stdout.write(_model_lines(model))
    return 0


def cmd_minor(args) -> int:
    g = _read_graph(args.infile, max_vertices=max(args.max_exact, 4096))
    model = find_kt_minor(g, args.t, max_exact=args.max_exact)
    if args.json:
        doc = {
            "t": args.t,
            "found": model is not None,
            "model": model.as_vertex_lists() if model else None,
        }
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    elif model is None:
        sys.stdout.write(f"no K_{args.t} minor\n")
    else:
        sys.stdout.write(f"K_{args.t} minor found\n")
        sys.stdout.write(_model_lines(model))
    return 0


def cmd_list_color(args) -> int:
    g = _read_graph(args.infile)
    lists = parse_lists(Path(args.lists).read_text(), g.n)
    coloring = find_list_coloring(g, lists)
    if coloring is None:
        sys.stdout.write("no L-coloring\n")
    else:
        for v, c in enumerate(coloring):
            sys.stdout.write(f"{v}: {c}\n")
    return 0


def cmd_choosable(args) -> int:
    g = _read_graph(args.infile, max_vertices=4096)
    ok, witness = is_k_choosable(g, args.k)
    sys.stdout.write("true\n" if ok else "false\n")
    if witness is not None:
        sys.stdout.write(render_lists(witness))
    return 0


def cmd_chi_list(args) -> int:
    g = _read_graph(args.infile, max_vertices=4096)
    sys.stdout.write(f"{list_chromatic_number(g, args.cap)}\n")
    return 0


def cmd_assemble(args) -> int:
    params = construct.make_construction_params(
        args.epsilon,
        n=args.n,
        t=args.t,
        epsilon_prime=args.epsilon_prime,
        mode=args.mode,
        seed=args.seed,
        max_attempts=args.max_attempts,
        vertex_budget=args.budget,
    )
    # Sample until the clique/non-degree checks pass; covering quality is
    # reported but does not gate assembly.
    last = None
    chosen = None
    for attempt in range(params.max_attempts):
        gp = gadget.GadgetParams(
            n=params.n,
            epsilon=params.epsilon,
            seed=(params.seed + attempt) & ((1 << 64) - 1),
        )
        sample = gadget.sample_bipartite(gp)
        h = gadget.gadget_from_sample(sample)
        report = _build_gadget_report(
            h, sample, params.epsilon, gp.f, args.max_exact, gadget.COVERING_WORK_LIMIT
        )
        last = report
        if report.cliques_ok and report.nondegree_ok:
            chosen = (h, report)
            break
    if chosen is None:
        from .errors import ExhaustionError

        raise ExhaustionError(
            f"no gadget passed cliques/non-degree in {params.max_attempts} attempts",
            last_report=last,
            attempts=params.max_attempts,
        )
    h, report = chosen
    inst = construct.assemble(
        h, params.mode, params=params, vertex_budget=params.vertex_budget
    )
    cross = args.cross_check == "on" or (
        args.cross_check == "auto" and inst.graph.n <= 200
    )
    unlist = construct.verify_unlistcolorable(inst, cross_check=cross)
    cert = construct.certify(inst, unlist, report)
    out = Path(args.out)
    write_atomic(out / GRAPH_FILE, render_graph(inst.graph))
    write_atomic(out / LISTS_FILE, render_lists(inst.lists))
    write_atomic(out / CERT_FILE, construct.certificate_to_json(cert))
    print(f"wrote {out / GRAPH_FILE}, {out / LISTS_FILE}, {out / CERT_FILE}")
    return 0


def cmd_certify(args) -> int:
    d = Path(args.dir)
    graph_text = (d / GRAPH_FILE).read_text()
    lists_text = (d / LISTS_FILE).read_text()
    cert = json.loads((d / CERT_FILE).read_text())
    rep = construct.replay_certificate(
        graph_text, lists_text, cert, max_exact=args.max_exact
    )
    for name, ok, detail in rep.checks:
        status = "ok" if ok else "FAIL"
        print(f"{status}: {name} - {detail}")
    if not rep.ok:
        print("certificate INVALID")
        return 1
    print("certificate OK")
    return 0


def cmd_montecarlo(args) -> int:
    report = montecarlo.monte_carlo(
        args.n, args.epsilon, args.trials, args.seed, threads=args.threads
    )
    text = json.dumps(report.to_json_dict(), indent=2) + "\n"
    if args.out:
        write_atomic(Path(args.out), text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_export_dot(args) -> int:
    g = _read_graph(args.infile)
    text = to_dot(g)
    if args.out:
        write_atomic(Path(args.out), text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="listminor",
        description="Exact toolkit for list-chromatic lower bounds on "
        "graphs without large clique minors",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--threads", type=int, default=1, help="worker threads (0 = auto)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-gadget", parents=[common], help="sample a verified gadget")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--epsilon", type=_fraction, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-attempts", type=int, default=64)
    p.add_argument("--verify-minor", action="store_true")
    p.add_argument("--max-exact", type=int, default=DEFAULT_MAX_EXACT)
    p.add_argument("--out", help="directory for H.g and report.json")
    p.set_defaults(func=cmd_gen_gadget)

    p = sub.add_parser("check-gadget", parents=[common], help="verify gadget properties")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--epsilon", type=_fraction, required=True)
    p.add_argument("--f", type=int, default=None)
    p.add_argument("--max-exact", type=int, default=DEFAULT_MAX_EXACT)
    p.add_argument("--out")
    p.set_defaults(func=cmd_check_gadget)

    p = sub.add_parser("hadwiger", parents=[common], help="exact Hadwiger number")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--max-exact", type=int, default=DEFAULT_MAX_EXACT)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_hadwiger)

    p = sub.add_parser("minor", parents=[common], help="exact K_t-minor search")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--max-exact", type=int, default=DEFAULT_MAX_EXACT)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_minor)

    p = sub.add_parser("list-color", parents=[common], help="list coloring search")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--lists", required=True)
    p.set_defaults(func=cmd_list_color)

    p = sub.add_parser("choosable", parents=[common], help="exact k-choosability")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_choosable)

    p = sub.add_parser("chi-list", parents=[common], help="exact list chromatic number")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--cap", type=int, required=True)
    p.set_defaults(func=cmd_chi_list)

    p = sub.add_parser("assemble", parents=[common], help="build instance + certificate")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--epsilon", type=_fraction, required=True)
    p.add_argument("--epsilon-prime", type=_fraction, default=None)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--mode", choices=("full", "reduced"), default="reduced")
    p.add_argument("--max-attempts", type=int, default=64)
    p.add_argument("--budget", type=int, default=construct.DEFAULT_VERTEX_BUDGET)
    p.add_argument("--max-exact", type=int, default=DEFAULT_MAX_EXACT)
    p.add_argument("--cross-check", choices=("auto", "on", "off"), default="auto")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_assemble)

    p = sub.add_parser("certify", parents=[common], help="replay a certificate")
    p.add_argument("--dir", required=True)
    p.add_argument("--max-exact", type=int, default=DEFAULT_MAX_EXACT)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("montecarlo", parents=[common], help="sampler statistics")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--epsilon", type=_fraction, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_montecarlo)

    p = sub.add_parser("export-dot", parents=[common], help="DOT export")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_dot)

    return parser


def run_cli(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))
