"""``chroma`` command line.

Exit codes: 0 success, 1 a checked property failed, 2 usage or input error,
3 an exact solver hit its size cap.
"""
from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import extractor, fractional, kneser, rodl, sparsifier
from .config import CapExceeded
from .graph import (
    DimacsError,
    Graph,
    chromatic_number,
    complete,
    cycle,
    format_dimacs,
    girth,
    graph_digest,
    mycielskian,
    random_graph,
    read_dimacs,
    write_dimacs,
)
from .report import RunReport, atomic_write_text, fraction_str

EXIT_OK, EXIT_PROPERTY, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
SEED_ENV = "CHROMA_SEED"


class UsageError(Exception):
    pass


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _fraction_list(text: str) -> list[Fraction]:
    return [_fraction(t) for t in text.split(",") if t.strip()]


class _Run:
    """What a subcommand produces: lines for stdout, a report, and an exit code."""

    def __init__(self, argv: list[str], seed: int | None):
        self.report = RunReport(command=list(argv), seed=seed)
        self.code = EXIT_OK
        self.seed = seed

    def load(self, path: str, name: str = "graph") -> Graph:
        g = read_dimacs(path)
        self.report.inputs[name] = graph_digest(g)
        return g

    def out(self, text: str) -> None:
        print(text)


def _write_graph(g: Graph, path: str | None, comments=()) -> None:
    if path is None or path == "-":
        sys.stdout.write(format_dimacs(g, comments))
    else:
        write_dimacs(g, path, comments)


# --- subcommands ------------------------------------------------------------

def cmd_chif(args, run: _Run) -> None:
    g = run.load(args.graph)
    method = fractional.auto_method(g.n) if args.method == "auto" else args.method
    value, fc = fractional.fractional_chromatic(g, method)
    total = fractional.verify_fractional_coloring(g, fc)
    if total != value:
        raise AssertionError("fractional coloring certificate does not match the LP value")
    run.report.modes["method"] = method
    run.report.results.update({"chi_f": value, "coloring": fc})
    if args.certificate:
        atomic_write_text(args.certificate, fc.format())
    run.out(fraction_str(value) if value.denominator != 1 else f"{value.numerator}")


def cmd_chi(args, run: _Run) -> None:
    g = run.load(args.graph)
    chi, colors = chromatic_number(g)
    run.report.results.update({"chi": chi, "coloring": colors})
    run.out(str(chi))


def cmd_girth(args, run: _Run) -> None:
    g = run.load(args.graph)
    value = girth(g)
    run.report.results["girth"] = value
    run.out("inf" if value == float("inf") else str(value))


def cmd_gen(args, run: _Run) -> None:
    labels = None
    kind = args.kind
    if kind == "cycle":
        g = cycle(_need(args.n, "-n"))
    elif kind == "complete":
        g = complete(_need(args.n, "-n"))
    elif kind == "mycielski":
        g = read_dimacs(args.base) if args.base else cycle(args.n or 5)
        for _ in range(args.depth):
            g = mycielskian(g)
    elif kind == "random":
        if run.seed is None:
            raise UsageError("gen random needs --seed or CHROMA_SEED")
        g = random_graph(_need(args.n, "-n"), args.p, run.seed)
    elif kind == "kneser":
        n, k = _need(args.n, "-n"), _need(args.k, "-k")
        g = kneser.kneser(n, k)
        labels = kneser.kneser_labels(n, k)
    elif kind == "blowup":
        if not args.base:
            raise UsageError("gen blowup needs --base")
        g, _ = kneser.blow_up(run.load(args.base, "base"), _need(args.m, "-m"))
    else:  # argparse restricts the choices
        raise UsageError(f"unknown kind {kind}")
    run.report.results.update({"kind": kind, "n": g.n, "m": g.m, "digest": graph_digest(g)})
    _write_graph(g, args.output, [f"generated by chroma gen {kind}"])
    if labels is not None and args.output and args.output != "-":
        atomic_write_text(args.output + ".labels", "".join(f"{i + 1} {lab}\n" for i, lab in enumerate(labels)))


def _need(value, flag: str):
    if value is None:
        raise UsageError(f"missing required option {flag}")
    return value


def cmd_embed(args, run: _Run) -> None:
    emb = kneser.kgbu_embedding(args.n, args.k, args.t, args.x)
    violation = kneser.verify_blowup_containment(emb)
    run.report.results.update({
        "base": f"KG({args.n},{args.k})",
        "host": f"KG({args.n * args.t},{args.k * args.t - args.x})",
        "power": emb.power,
        "violation": None if violation is None else violation._asdict(),
    })
    if args.output:
        write_dimacs(emb.host, args.output, [f"KG({args.n * args.t},{args.k * args.t - args.x})"])
        atomic_write_text(args.output + ".classes", emb.format())
    if violation is None:
        run.out(f"ok power={emb.power}")
    else:
        run.out(f"violation {violation.kind}: {violation.detail}")
        run.code = EXIT_PROPERTY


def cmd_descend(args, run: _Run) -> None:
    g = run.load(args.graph)
    trace = rodl.rodl_descent(g, args.thresholds)
    run.report.results["trace"] = trace
    run.out(f"{trace.outcome} pivots={' '.join(str(v + 1) for v in trace.pivots)}".rstrip())


def cmd_extract(args, run: _Run) -> None:
    g = run.load(args.graph)
    owg = extractor.OrderedWeightedGraph.unit(g) if args.weights == "unit" else extractor.OrderedWeightedGraph.alpha_f(g)
    cert = extractor.extract_triangle_free(owg, args.x, args.l, args.budget, run.seed if run.seed is not None else 0)
    if not cert.check(owg):
        raise AssertionError("extraction certificate failed recomputation")
    run.report.modes.update({"weights": args.weights, "result": "accepted" if cert.accepted else "best-effort"})
    run.report.results["certificate"] = cert
    if args.output:
        _write_graph(cert.H, args.output, ["triangle-free spanning subgraph"])
    run.out(
        f"{'accepted' if cert.accepted else 'best-effort'} max_weight={fraction_str(cert.max_independent_weight)} "
        f"target={fraction_str(cert.target)} attempts={cert.attempts}"
    )


def cmd_sparsify(args, run: _Run) -> None:
    base = run.load(args.graph, "base")
    rep = sparsifier.but_pipeline(
        base, args.x, args.g, args.m, seed=run.seed if run.seed is not None else 0,
        budget=args.budget, p=args.p, strategy=args.strategy,
    )
    run.report.modes.update(rep.modes)
    run.report.results.update(rep.results)
    s = rep.results["summary"]
    run.out(f"samples={s['samples']} girth_ok={s['girth_ok']} chi_ok={s['chi_ok']} successes={s['successes']}")


def cmd_check(args, run: _Run) -> None:
    what = args.what
    res = run.report.results
    if what == "rodl-bounds":
        failures = [x for x in range(args.x_min, args.x_max + 1) if not rodl.recursive_bound_holds(x)]
        res.update({"x_min": args.x_min, "x_max": args.x_max, "failures": failures[:100], "n_failures": len(failures)})
        run.out("all hold" if not failures else f"{len(failures)} failures, first at x={failures[0]}")
        ok = not failures
    elif what == "lll":
        s = args.s if args.s is not None else None
        if s is None:
            raise UsageError("check lll needs --s")
        verdict = sparsifier.lll_inequalities_hold(args.x, args.delta, args.g, s)
        res["inequalities"] = verdict
        run.out(f"ineq3 {'holds' if verdict.ineq3 else 'fails'}  ineq4 {'holds' if verdict.ineq4 else 'fails'}")
        ok = verdict.ineq3 and verdict.ineq4
    elif what == "dense-bound":
        base = extractor.dense_probability_base(args.x)
        ok = base < 0.5
        res.update({"x": args.x, "base": base, "holds": ok})
        run.out(f"base={base:.6f} {'< 1/2' if ok else '>= 1/2'}")
    elif what == "kneser-params":
        params = kneser.eh_kneser_params(args.k, args.g, args.x, args.n)
        res["params"] = params
        ok = params.ineq_ratio and params.ineq_linear and params.ineq_girth and params.power_sufficient
        run.out(
            f"t={params.t} z={params.z:.4f} ratio={params.ineq_ratio} linear={params.ineq_linear} "
            f"girth={params.ineq_girth} power={params.power_sufficient} branch={params.branch}"
        )
    else:
        raise UsageError(f"unknown check {what}")
    if not ok:
        run.code = EXIT_PROPERTY


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    def shared(default):
        parser = argparse.ArgumentParser(add_help=False)
        parser.add_argument("--json", metavar="PATH", default=default, help="write a RunReport here")
        parser.add_argument("--seed", type=_seed, default=default, help=f"u64 seed (default: ${SEED_ENV})")
        return parser

    # Accept the shared options before or after the subcommand.
    common = shared(argparse.SUPPRESS)
    ap = argparse.ArgumentParser(prog="chroma", description="Fractional coloring and sparse-subgraph experiments.",
                                 parents=[shared(None)])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chif", parents=[common], help="exact fractional chromatic number")
    p.add_argument("graph")
    p.add_argument("--method", choices=["auto", fractional.ENUMERATE, fractional.COLUMN_GENERATION], default="auto")
    p.add_argument("--certificate", metavar="PATH", help="write the optimal fractional coloring")
    p.set_defaults(func=cmd_chif)

    p = sub.add_parser("chi", parents=[common], help="exact chromatic number")
    p.add_argument("graph")
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("girth", parents=[common], help="length of the shortest cycle")
    p.add_argument("graph")
    p.set_defaults(func=cmd_girth)

    p = sub.add_parser("gen", parents=[common], help="generate a graph as DIMACS")
    p.add_argument("kind", choices=["cycle", "complete", "mycielski", "random", "kneser", "blowup"])
    p.add_argument("-n", type=int)
    p.add_argument("-k", type=int)
    p.add_argument("-m", type=int, help="blow-up power")
    p.add_argument("-p", type=float, default=0.5, help="edge probability (random)")
    p.add_argument("--depth", type=int, default=1, help="Mycielski iterations")
    p.add_argument("--base", help="base graph file (mycielski, blowup)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("embed", parents=[common], help="blow-up embeddings")
    p.add_argument("what", choices=["kgbu"])
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-t", type=int, required=True)
    p.add_argument("-x", type=int, required=True)
    p.add_argument("-o", "--output", help="host DIMACS; classes go to <output>.classes")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("descend", parents=[common], help="left-neighbourhood descent")
    p.add_argument("graph")
    p.add_argument("--thresholds", type=_fraction_list, required=True, help="comma separated, consumed last to first")
    p.set_defaults(func=cmd_descend)

    p = sub.add_parser("extract", parents=[common], help="triangle-free spanning subgraph search")
    p.add_argument("graph")
    p.add_argument("--x", type=_fraction, required=True)
    p.add_argument("--l", type=_fraction, required=True)
    p.add_argument("--budget", type=int, default=100)
    p.add_argument("--weights", choices=["unit", "alpha-f"], default="alpha-f")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("sparsify", parents=[common], help="sample sparsified blow-ups")
    p.add_argument("graph", help="base graph")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=float, help="override the edge probability")
    p.add_argument("--budget", type=int, default=100)
    p.add_argument("--strategy", choices=[sparsifier.REJECTION, sparsifier.RESAMPLE, sparsifier.RESAMPLE_CYCLES],
                   default=sparsifier.REJECTION)
    p.set_defaults(func=cmd_sparsify)

    p = sub.add_parser("check", parents=[common], help="numeric conditions")
    p.add_argument("what", choices=["rodl-bounds", "lll", "dense-bound", "kneser-params"])
    p.add_argument("--x-min", type=int, default=3)
    p.add_argument("--x-max", type=int, default=100)
    p.add_argument("--x", type=float)
    p.add_argument("--delta", type=int)
    p.add_argument("--g", type=int)
    p.add_argument("--s", type=float)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_check)
    return ap


def _check_args(args) -> None:
    if getattr(args, "command", None) != "check":
        return
    need = {"lll": ("x", "delta", "g", "s"), "dense-bound": ("x",), "kneser-params": ("k", "g", "x", "n")}
    for name in need.get(args.what, ()):
        if getattr(args, name) is None:
            raise UsageError(f"check {args.what} needs --{name}")
    if args.what == "kneser-params":
        args.x = int(args.x)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    seed = args.seed
    if seed is None and os.environ.get(SEED_ENV):
        try:
            seed = _seed(os.environ[SEED_ENV])
        except argparse.ArgumentTypeError as exc:
            print(f"chroma: {SEED_ENV}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    run = _Run(argv, seed)
    try:
        _check_args(args)
        args.func(args, run)
    except (UsageError, DimacsError, FileNotFoundError, ValueError) as exc:
        print(f"chroma: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"chroma: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    if args.json:
        run.report.write(args.json)
    return run.code


if __name__ == "__main__":
    sys.exit(main())
