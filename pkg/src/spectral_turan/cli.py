"""Command-line front end: verify, certify, scan, gen, spectrum, clique.

Exit codes: 0 success, 1 a violation was flagged, 2 usage or input error,
3 internal numerical failure (solver non-convergence or a failed identity).
"""
from __future__ import annotations

import argparse
import os
import sys
import warnings

from .combinatorics import max_clique
from .errors import ConvergenceFailure, SpectralTuranError
from .evaluate import evaluate
from .graph import (
    Graph,
    disjoint_union,
    gen_gnp,
    gen_named,
    gen_random_regular,
    gen_turan,
)
from .graph6 import parse_graph6, to_graph6
from .inequalities import CheckKind, Tolerances, UnexpectedTightWarning
from .scan import Check, Filters, ScanConfig, Source, emit_report, format_real, scan
from .spectral import eigendecompose

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

CHECK_NAMES = {
    "turan": Check.SPECTRAL_TURAN,
    "bn": Check.BOLLOBAS_NIKIFOROV,
    "ando-lin": Check.ANDO_LIN_CHI,
    "certify": Check.CERTIFY,
}


class UsageError(Exception):
    pass


def _ints(text: str, count: int, what: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"{what}: expected {count} integer(s), got {text!r}") from None
    if len(vals) != count:
        raise UsageError(f"{what}: expected {count} integer(s), got {text!r}")
    return vals


def _one_graph(expr: str) -> Graph:
    name, _, args = expr.partition(":")
    name = name.strip().lower()
    if name == "petersen":
        return gen_named("petersen")
    if name in ("path", "cycle", "complete", "empty"):
        return gen_named(name, _ints(args, 1, name)[0])
    if name == "turan":
        n, w = _ints(args, 2, name)
        return gen_turan(n, w)
    if name == "random-regular":
        n, d, seed = _ints(args, 3, name)
        return gen_random_regular(n, d, seed)
    if name == "gnp":
        parts = args.split(",")
        if len(parts) != 3:
            raise UsageError(f"gnp: expected n,p,seed, got {args!r}")
        try:
            return gen_gnp(int(parts[0]), float(parts[1]), int(parts[2]))
        except ValueError:
            raise UsageError(f"gnp: expected n,p,seed, got {args!r}") from None
    return parse_graph6(expr.strip())


def load_graphs(source: str) -> list[Graph]:
    """Resolve a graph source: a file of graph6 lines, a generator expression, or a graph6 string.

    Generator expressions may be joined with ``+`` for a disjoint union,
    e.g. ``turan:6,3+turan:6,3``.
    """
    if os.path.isfile(source):
        with open(source, encoding="ascii") as fh:
            lines = [s.strip() for s in fh if s.strip() and s.strip() != ">>graph6<<"]
        if not lines:
            raise UsageError(f"{source}: no graph6 records")
        return [parse_graph6(s) for s in lines]
    parts = source.split("+")
    g = _one_graph(parts[0])
    for p in parts[1:]:
        g = disjoint_union(g, _one_graph(p))
    return [g]


def _use_color(stream) -> bool:
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def _mark(ok: bool, stream=sys.stdout) -> str:
    text = "PASS" if ok else "FAIL"
    if _use_color(stream):
        return f"\033[{32 if ok else 31}m{text}\033[0m"
    return text


def _header(g: Graph, ev) -> str:
    mu2 = format_real(ev.spectrum.mu2) if ev.spectrum.mu2 is not None else "-"
    return (
        f"graph {to_graph6(g)}  n={g.n} m={g.m} omega={ev.omega} "
        f"mu1={format_real(ev.spectrum.mu1)} mu2={mu2}"
    )


def cmd_verify(args) -> int:
    graphs = load_graphs(args.graph)
    checks = [CHECK_NAMES[c] for c in (args.check or ["turan", "bn"])]
    if Check.CERTIFY in checks:
        raise UsageError("use the certify command for proof-chain certificates")
    tol = Tolerances(args.tol_tight, args.tol_violation)
    violated = False
    for g in graphs:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UnexpectedTightWarning)
            ev = evaluate(g, [CheckKind(c.value) for c in checks], tol)
        print(_header(g, ev))
        for c in checks:
            v = ev.verdicts[CheckKind(c.value)]
            status = "violated" if v.violated else ("tight" if v.tight else "holds")
            print(f"  {c.value}")
            print(f"    lhs    = {format_real(v.lhs)}")
            print(f"    bound  = {format_real(v.bound)}")
            print(f"    slack  = {format_real(v.slack)}")
            print(f"    status = {status}")
            if c is Check.ANDO_LIN_CHI:
                print(f"    chi    = {v.chi}")
            if c is Check.BOLLOBAS_NIKIFOROV:
                print(f"    mu2 >= 0 indicator = {'yes' if v.indicator_applied else 'no'}")
                print(f"    class  = {ev.equality.label}")
                if ev.equality.tag.value == "UnexpectedTight":
                    if ev.equality.regular:
                        print("    WARNING: regular graph tight outside the known equality cases", file=sys.stderr)
                        print("    note: regular graph tight outside the known equality cases")
                    else:
                        print("    note: non-regular graph; tight instances of this kind are expected to exist")
            violated = violated or v.violated
        print()
    return EXIT_VIOLATION if violated else EXIT_OK


def _print_report(rep) -> None:
    print(f"  [{rep.title}]")
    for s in rep.steps:
        mark = "SKIP" if s.kind == "skipped" else _mark(s.passed)
        vals = ", ".join(f"{k}={format_real(v)}" for k, v in s.values)
        print(f"    {mark}  {s.name}: {vals}  (tol {s.tolerance:.1e})")
        if s.note:
            print(f"          {s.note}")


def cmd_certify(args) -> int:
    if args.r is not None and not args.r > 1:
        raise UsageError(f"--r must exceed 1, got {args.r:g}")
    graphs = load_graphs(args.graph)
    failed = False
    for g in graphs:
        ev = evaluate(g, [], certify_graph=True, r=args.r)
        print(_header(g, ev))
        print(f"  r = {args.r if args.r is not None else ev.omega:g}")
        for rep in ev.certificates:
            _print_report(rep)
        for note in ev.notices:
            print(f"  notice: {note}")
        ok = ev.certified
        print(f"  overall: {_mark(ok and all(r.overall for r in ev.certificates))}")
        print()
        failed = failed or not ok
    return EXIT_NUMERIC if failed else EXIT_OK


def _scan_config(args) -> ScanConfig:
    sources = [s for s in (args.enumerate, args.file, args.random_regular, args.gnp) if s is not None]
    if len(sources) != 1:
        raise UsageError("choose exactly one of --enumerate, --file, --random-regular, --gnp")
    if args.enumerate is not None:
        source = Source.enumerate(args.enumerate)
    elif args.file is not None:
        source = Source.graph6_file(args.file)
    elif args.random_regular is not None:
        n, d = _ints(args.random_regular, 2, "--random-regular")
        source = Source.random_regular(n, d, args.count, args.seed)
    else:
        parts = args.gnp.split(",")
        try:
            source = Source.gnp(int(parts[0]), float(parts[1]), args.count, args.seed)
        except (ValueError, IndexError):
            raise UsageError(f"--gnp: expected N,P, got {args.gnp!r}") from None
    workers = args.workers
    if workers is None:
        env = os.environ.get("SPECTRAL_TURAN_WORKERS")
        try:
            workers = int(env) if env else 1
        except ValueError:
            raise UsageError(f"SPECTRAL_TURAN_WORKERS must be an integer, got {env!r}") from None
    checks = tuple(CHECK_NAMES[c] for c in (args.check or ["bn"]))
    try:
        return ScanConfig(
            source,
            checks,
            Filters(args.regular_only, args.connected_only, args.non_complete_only),
            Tolerances(args.tol_tight, args.tol_violation),
            workers,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_scan(args) -> int:
    config = _scan_config(args)
    report = scan(config)
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            emit_report(report, args.format, fh)
    else:
        emit_report(report, args.format, sys.stdout)
    s = report.summary
    print(
        f"rows: {s['rows']}  tight: {s['tight']}  violations: {s['violations']}  "
        f"errors: {s['errors']}  alarms: {s['alarms']}  elapsed: {report.elapsed:.2f}s",
        file=sys.stderr,
    )
    if s["certificate_failures"]:
        print(f"certificate failures: {s['certificate_failures']}", file=sys.stderr)
    return EXIT_VIOLATION if s["violations"] else EXIT_OK


def cmd_gen(args) -> int:
    for g in load_graphs(args.graph):
        print(to_graph6(g))
    return EXIT_OK


def _fmt_eig(x: float, scale: float) -> str:
    if abs(x) < 1e-12 * scale:
        x = 0.0
    return f"{x:.12g}"


def cmd_spectrum(args) -> int:
    for g in load_graphs(args.graph):
        w = eigendecompose(g).eigenvalues
        scale = max(1.0, abs(float(w[0])))
        print(" ".join(_fmt_eig(float(x), scale) for x in w))
    return EXIT_OK


def cmd_clique(args) -> int:
    for g in load_graphs(args.graph):
        res = max_clique(g)
        print(f"omega={res.omega} witness={{{','.join(map(str, res.witness))}}}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectral-turan",
        description="Check mu1^2 + mu2^2 <= 2(omega-1)/omega * m and related spectral inequalities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    src_help = 'graph6 string, graph6 file, or generator such as "turan:12,3", "path:5", "petersen"'

    p = sub.add_parser("verify", help="evaluate inequalities on a graph")
    p.add_argument("graph", help=src_help)
    p.add_argument("--check", action="append", choices=["turan", "bn", "ando-lin"])
    p.add_argument("--tol-tight", type=float, default=1e-6)
    p.add_argument("--tol-violation", type=float, default=1e-6)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("certify", help="certify each step of the proof chain numerically")
    p.add_argument("graph", help=src_help)
    p.add_argument("--r", type=float, default=None, help="premise parameter (default: clique number)")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("scan", help="run checks over a stream of graphs")
    p.add_argument("--enumerate", type=int, metavar="N", help="all labeled graphs on N <= 7 vertices")
    p.add_argument("--file", metavar="PATH", help="graph6 file, one record per line")
    p.add_argument("--random-regular", metavar="N,D", help="COUNT uniform random D-regular graphs on N vertices")
    p.add_argument("--gnp", metavar="N,P", help="COUNT Erdos-Renyi G(N, P) samples")
    p.add_argument("--count", type=int, default=1, help="samples for random sources (default 1)")
    p.add_argument("--seed", type=int, default=0, help="base seed; sample i uses a seed derived from (seed, i)")
    p.add_argument("--check", action="append", choices=sorted(CHECK_NAMES), help="repeatable; default bn")
    p.add_argument("--regular-only", action="store_true")
    p.add_argument("--connected-only", action="store_true")
    p.add_argument("--non-complete-only", action="store_true")
    p.add_argument("--tol-tight", type=float, default=1e-6)
    p.add_argument("--tol-violation", type=float, default=1e-6)
    p.add_argument("--workers", type=int, default=None, help="worker processes (default $SPECTRAL_TURAN_WORKERS or 1)")
    p.add_argument("--out", metavar="PATH", help="report file (default standard output)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_scan)

    for name, func, text in (
        ("gen", cmd_gen, "print a graph as graph6"),
        ("spectrum", cmd_spectrum, "print adjacency eigenvalues, descending"),
        ("clique", cmd_clique, "print the clique number and a witness"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("graph", help=src_help)
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ConvergenceFailure, ArithmeticError) as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, SpectralTuranError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
