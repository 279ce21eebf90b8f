"""Command-line front end.

Exit codes: 0 success, 1 I/O or parse error, 2 failed precondition or
mathematical hypothesis, 64 usage error. Errors are reported as JSON on stdout.
"""
import argparse
import sys
from math import inf
from pathlib import Path

import numpy as np

from . import certificates, embeddings, graphs, recovery
from .io import (
    ParseError,
    dumps,
    format_edge_list,
    format_embedding,
    parse_inputs,
)
from .orders import canonical_epsilon_matrix

EXIT_OK, EXIT_IO, EXIT_HYPOTHESIS, EXIT_USAGE = 0, 1, 2, 64

KIND_ALIASES = {
    "complete_bipartite": "complete_bipartite",
    "bipartite": "complete_bipartite",
    "cycle": "cycle",
    "hamming": "hamming_halfcube",
    "hamming_halfcube": "hamming_halfcube",
    "minus_matching": "bipartite_minus_matching",
    "bipartite_minus_matching": "bipartite_minus_matching",
    "double": "double",
}


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--kind {args.kind} requires {', '.join(missing)}")


def _diameter(value):
    return None if value == inf else value


# ---------------------------------------------------------------- commands


def cmd_gen(args):
    kind = KIND_ALIASES.get(args.kind)
    if kind is None:
        raise UsageError(f"unknown --kind {args.kind!r}; choose from {sorted(KIND_ALIASES)}")
    if kind == "complete_bipartite":
        _need(args, "a", "b")
        g = graphs.complete_bipartite(args.a, args.b)
    elif kind == "cycle":
        _need(args, "n")
        g = graphs.cycle(args.n)
    elif kind == "hamming_halfcube":
        _need(args, "k")
        g = graphs.hamming_halfcube(args.k)
    elif kind == "bipartite_minus_matching":
        _need(args, "m")
        g = graphs.bipartite_minus_matching(args.m)
    else:
        if args.input is None:
            raise UsageError("--kind double requires an input edge list")
        g = graphs.double(parse_inputs(args.input, "edge-list"))
    _emit(format_edge_list(g), args.out)


def cmd_spectrum(args):
    g = parse_inputs(args.graph, "edge-list")
    s = graphs.spectral_summary(g)
    vals = s.eigenvalues
    doc = {
        "n": g.n,
        "m": g.m,
        "eigenvalues": [float(v) for v in vals],
        "lambda1": float(vals[0]),
        "lambda2": s.lambda2,
        "lambda_n": float(vals[-1]),
        "eigenvalue_sum": float(vals.sum()),
        "eigenvalue_square_sum": float((vals * vals).sum()),
        "degree_min": s.degree_min,
        "degree_max": s.degree_max,
        "is_regular": s.is_regular,
        "d": s.degree,
        "delta": s.delta,
        "diameter": _diameter(s.diameter),
        "connected": s.diameter != inf,
    }
    _emit(dumps(doc), args.out)


def cmd_embed_order(args):
    order = parse_inputs(args.order, "order")
    e = embeddings.monotone_embed_l2(order)
    _emit(format_embedding(e), args.out)
    if args.out:
        check = embeddings.verify_monotone(e, order)
        sq = e.squared_distances()
        target = 2 + 2 * canonical_epsilon_matrix(order)
        off = ~np.eye(order.n, dtype=bool)
        doc = {
            "n": e.n,
            "d": e.d,
            "monotone": check.ok,
            "max_unit_norm_error": float(abs((e.coords**2).sum(axis=1) - 1).max()),
            "max_distance_error": float(abs(sq - target)[off].max(initial=0.0)),
        }
        sys.stdout.write(dumps(doc))


def cmd_verify_embedding(args):
    e = parse_inputs(args.embedding, "embedding-csv")
    if (args.order is None) == (args.graph is None):
        raise UsageError("give exactly one of --order or --graph")
    if args.order is not None:
        order = parse_inputs(args.order, "order")
        check = embeddings.verify_monotone(e, order, args.norm)
        doc = {
            "mode": "monotone",
            "norm": args.norm,
            "n": e.n,
            "d": e.d,
            "ok": check.ok,
            "violation": [list(p) for p in check.violation] if check.violation else None,
        }
    else:
        g = parse_inputs(args.graph, "edge-list")
        r = embeddings.verify_spherical(e, g)
        doc = {
            "mode": "spherical",
            "n": e.n,
            "d": e.d,
            "a": r.a,
            "b": r.b,
            "feasible": r.feasible,
            "margin": r.margin,
            "gap": r.gap,
        }
    _emit(dumps(doc), args.out)


def cmd_margin_bound(args):
    g = parse_inputs(args.graph, "edge-list")
    c = certificates.margin_certificate(g, psd_tol=args.tol)
    if not c.feasible:
        raise graphs.HypothesisError(f"certificate failed verification: {c.residuals.violated}")
    mb = certificates.margin_bound_value(c)
    _emit(dumps(certificates.report(c, bound=mb.ratio)), args.out)


def cmd_certify_sphericity(args):
    g = parse_inputs(args.graph, "edge-list")
    sb = certificates.sphericity_lower_bound(g, psd_tol=args.tol)
    _emit(dumps(certificates.report(sb.certificate, bound=sb.bound, diam=sb.diameter)), args.out)


def cmd_recover(args):
    g = parse_inputs(args.graph, "edge-list")
    r = recovery.spectral_bipartite_recovery(g)
    _emit(dumps(recovery.report(g, r)), args.out)


def cmd_mt_bound(args):
    for name in ("m", "k", "d", "l"):
        if getattr(args, name) is None:
            raise UsageError(f"mt-bound requires --{name}")
    bound = embeddings.milnor_thom_bound(args.m, args.k, args.d, args.l)
    doc = {
        "m": args.m,
        "k": args.k,
        "d": args.d,
        "l": args.l,
        "exponent": embeddings.milnor_thom_exponent(args.m, args.k, args.l),
        "bound": bound,
    }
    _emit(dumps(doc), args.out)


def cmd_sample_orders(args):
    if args.n is None or args.d is None:
        raise UsageError("sample-orders requires --n and --d")
    sample = embeddings.sample_realized_orders(args.n, args.d, args.trials, args.seed)
    ceiling, k = embeddings.order_count_ceiling(args.n, args.d)
    doc = {
        "n": args.n,
        "d": args.d,
        "trials": args.trials,
        "seed": args.seed,
        "distinct_orders": len(sample.orders),
        "accepted": sample.accepted,
        "discarded": sample.discarded,
        "milnor_thom_ceiling": ceiling,
        "milnor_thom_k": k,
    }
    _emit(dumps(doc), args.out)


def cmd_mix_check(args):
    g = parse_inputs(args.graph, "edge-list")
    if args.subset:
        try:
            subset = [int(v) for v in args.subset.split(",") if v.strip()]
        except ValueError:
            raise UsageError("--subset must be a comma-separated list of vertices") from None
        r = graphs.mixing_bound_check(g, subset, strict=not args.any_regular)
        doc = {
            "n": g.n,
            "subset": sorted(set(subset)),
            "internal_edges": r.internal_edges,
            "bound": r.bound,
            "ok": r.ok,
        }
    else:
        s = graphs.mixing_scan(g, tol=args.tol, strict=not args.any_regular)
        doc = {
            "n": g.n,
            "subsets": s.subsets,
            "violations": s.violations,
            "worst_slack": s.worst_slack,
            "worst_subset": list(s.worst_subset),
            "ok": s.violations == 0,
        }
    _emit(dumps(doc), args.out)


def cmd_edit_distance(args):
    g = parse_inputs(args.graph, "edge-list")
    h = parse_inputs(args.other, "edge-list")
    _emit(dumps({"n": g.n, "distance": graphs.edge_edit_distance(g, h)}), args.out)


# ---------------------------------------------------------------- parser


def build_parser():
    p = Parser(prog="specmono", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=Parser)

    def add(name, fn, help_text, inputs=(), tol=None):
        sp = sub.add_parser(name, help=help_text)
        for arg, h, *nargs in inputs:
            sp.add_argument(arg, help=h, nargs=nargs[0] if nargs else None)
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--seed", type=int, default=0)
        if tol is not None:
            sp.add_argument("--tol", type=float, default=tol)
        sp.set_defaults(func=fn)
        return sp

    g = add("gen", cmd_gen, "generate a graph edge list", [("input", "base graph for --kind double", "?")])
    g.add_argument("--kind", required=True)
    for flag in ("a", "b", "n", "k", "m"):
        g.add_argument(f"--{flag}", type=int)

    add("spectrum", cmd_spectrum, "spectral summary of a graph", [("graph", "edge list")])
    add("embed-order", cmd_embed_order, "monotone l2 embedding of a pair order", [("order", "order file")])
    v = add("verify-embedding", cmd_verify_embedding, "check an embedding", [("embedding", "embedding CSV")])
    v.add_argument("--order")
    v.add_argument("--graph")
    v.add_argument("--norm", choices=embeddings.NORMS, default="euclidean")
    add("margin-bound", cmd_margin_bound, "margin dual certificate", [("graph", "edge list")],
        tol=certificates.PSD_TOL)
    add("certify-sphericity", cmd_certify_sphericity, "sphericity lower bound",
        [("graph", "edge list")], tol=certificates.PSD_TOL)
    add("recover", cmd_recover, "spectral complete-bipartite recovery", [("graph", "edge list")])
    mt = add("mt-bound", cmd_mt_bound, "sign-pattern count bound")
    for flag in ("m", "k", "d", "l"):
        mt.add_argument(f"--{flag}", type=int)
    so = add("sample-orders", cmd_sample_orders, "count realized pair orders by sampling")
    so.add_argument("--n", type=int)
    so.add_argument("--d", type=int)
    so.add_argument("--trials", type=int, default=10_000)
    mc = add("mix-check", cmd_mix_check, "expander mixing bound", [("graph", "edge list")],
             tol=graphs.MIXING_TOL)
    mc.add_argument("--subset", help="comma-separated vertices; omit for an exhaustive scan")
    mc.add_argument("--any-regular", action="store_true", help="accept any regular graph, not only n/2-regular")
    add("edit-distance", cmd_edit_distance, "edge edit distance",
        [("graph", "edge list"), ("other", "edge list")])
    return p


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"specmono: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        sys.stdout.write(dumps({"error": str(exc), "kind": "parse", "line": exc.line}))
        return EXIT_IO
    except OSError as exc:
        sys.stdout.write(dumps({"error": str(exc), "kind": "io"}))
        return EXIT_IO
    except graphs.HypothesisError as exc:
        sys.stdout.write(dumps({"error": str(exc), "kind": "hypothesis"}))
        return EXIT_HYPOTHESIS
    except ValueError as exc:
        sys.stdout.write(dumps({"error": str(exc), "kind": "precondition"}))
        return EXIT_HYPOTHESIS
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
