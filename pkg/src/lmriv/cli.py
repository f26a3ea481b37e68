"""Command line interface: ``lmriv {poly,roots,stats,detect,check,sweep}``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import asdict
from fractions import Fraction

from . import __version__
from .graphcore import (
    Graph,
    Graph6Error,
    GraphError,
    complement_edges,
    decode_graph6,
    degree_stats,
    encode_graph6,
    neighbor_sums,
    parse_edge_list,
)
from .lmpoly import identity_report, lm_polynomial, lm_polynomial_bruteforce, matching_counts
from .polyalg import DEFAULT_MAX_WIDTH
from .sweeper import (
    SUITES,
    CheckpointMismatch,
    SweepConfig,
    SweepInterrupted,
    emit_report,
    run_sweep,
)
from .variation import (
    RealRootAnomaly,
    audit_counterexample,
    check_interlacing,
    delta_power_sum_check,
    detect_integral_variation,
    lm_roots,
)

EXIT_ANOMALY = 10


class UsageError(Exception):
    pass


def _parse_pairs(text: str) -> list[tuple[int, int]]:
    pairs = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            u, v = tok.split("-")
            pairs.append((int(u), int(v)))
        except ValueError:
            raise UsageError(f"bad edge {tok!r}; expected u-v") from None
    if not pairs:
        raise UsageError("--add needs at least one edge")
    return pairs


def _load_graph(args) -> Graph:
    if args.graph6 is not None and args.edge_list is not None:
        raise UsageError("give either -g or --edge-list, not both")
    try:
        if args.graph6 is not None:
            return decode_graph6(args.graph6)
        if args.edge_list is not None:
            with open(args.edge_list) as f:
                return parse_edge_list(f.read())
    except (Graph6Error, GraphError) as exc:
        raise UsageError(str(exc)) from None
    raise UsageError("a graph is required (-g GRAPH6 or --edge-list FILE)")


def _width(text: str) -> Fraction:
    try:
        w = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")
    if w <= 0:
        raise argparse.ArgumentTypeError("width must be positive")
    return w


def _max_f(text: str):
    if text == "all":
        return None
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("--max-f takes a positive integer or 'all'")
    if k < 1:
        raise argparse.ArgumentTypeError("--max-f must be >= 1")
    return k


def _out(args, obj, text: str):
    if args.format == "json":
        print(json.dumps(obj))
    else:
        print(text)


def _check_non_edges(g: Graph, pairs):
    for u, v in pairs:
        if not (0 <= u < g.n and 0 <= v < g.n) or u == v:
            raise UsageError(f"invalid vertex pair ({u}, {v}) for n={g.n}")
        if g.has_edge(u, v):
            raise UsageError(f"({u}, {v}) is already an edge of the graph")


# -- subcommands ----------------------------------------------------------

def cmd_poly(args):
    g = _load_graph(args)
    p = lm_polynomial_bruteforce(g) if args.bruteforce else lm_polynomial(g)
    obj = {"graph6": encode_graph6(g), "n": g.n, "coefficients": list(p.coeffs)}
    if args.matching:
        mp = matching_counts(g).matching_polynomial(g.n)
        obj["matching_coefficients"] = list(mp.coeffs)
    text = str(p)
    if args.matching:
        text += "\n" + str(mp)
    _out(args, obj, text)
    return 0


def cmd_roots(args):
    g = _load_graph(args)
    rm = lm_roots(g, args.width)
    rows = [{"interval": [str(r.interval.lo), str(r.interval.hi)],
             "multiplicity": r.multiplicity, "approx": r.approx()} for r in rm.roots]
    obj = {"graph6": encode_graph6(g), "n": g.n, "roots": rows}
    lines = [f"{r['approx']:.12g}  mult {r['multiplicity']}  "
             f"[{r['interval'][0]}, {r['interval'][1]}]" for r in rows]
    hm = None
    if args.add:
        pairs = _parse_pairs(args.add)
        _check_non_edges(g, pairs)
        h = g.add_edges(pairs)
        hm = lm_roots(h, args.width)
        obj["added"] = [list(p) for p in pairs]
        obj["roots_after"] = [{"interval": [str(r.interval.lo), str(r.interval.hi)],
                               "multiplicity": r.multiplicity, "approx": r.approx()}
                              for r in hm.roots]
        lines.append("after adding " + args.add + ":")
        lines += [f"{r.approx():.12g}  mult {r.multiplicity}" for r in hm.roots]
    if args.plot:
        from .plotting import plot_root_strip
        plot_root_strip(rm, hm, args.plot)
        obj["figure"] = args.plot
    _out(args, obj, "\n".join(lines))
    return 0


def cmd_stats(args):
    g = _load_graph(args)
    st = degree_stats(g)
    obj = {"graph6": encode_graph6(g), "n": g.n, **asdict(st),
           "degrees": list(g.degrees),
           "neighbor_sums": [asdict(neighbor_sums(g, w)) for w in range(g.n)]}
    obj["A"], obj["E"] = list(st.A), list(st.E)
    text = (f"n={g.n} m={st.m}\nA={list(st.A)}\nB={st.B} C={st.C}\n"
            f"E={list(st.E)}\nphi2={st.phi2}")
    _out(args, obj, text)
    return 0


def cmd_check(args):
    g = _load_graph(args)
    rep = identity_report(g)
    obj = {"identities": rep.to_json()}
    ok = rep.passed
    lines = [f"identities: {'pass' if rep.passed else 'FAIL'} "
             f"(p4 {rep.p4} vs {rep.p4_rhs}, p5 {rep.p5} vs {rep.p5_rhs})"]
    if not args.identities_only:
        deltas, inter = [], []
        for e in complement_edges(g):
            d = delta_power_sum_check(g, e)
            il = check_interlacing(g, e)
            deltas.append({"edge": list(e), "dp4": d.dp4, "dp5": d.dp5, "pass": d.passed})
            inter.append({"edge": list(e), "pass": il.ok, "comparisons": il.comparisons})
            ok &= d.passed and il.ok
            lines.append(f"edge {e[0]}-{e[1]}: delta {'pass' if d.passed else 'FAIL'}, "
                         f"interlacing {'pass' if il.ok else 'FAIL'}")
        obj["delta"] = deltas
        obj["interlacing"] = inter
    obj["pass"] = ok
    _out(args, obj, "\n".join(lines))
    return 0 if ok else 1


def cmd_detect(args):
    g = _load_graph(args)
    pairs = _parse_pairs(args.add)
    _check_non_edges(g, pairs)
    if len(set(tuple(sorted(p)) for p in pairs)) != len(pairs):
        raise UsageError("an edge is listed twice in --add")
    res = detect_integral_variation(g, pairs)
    h = g.add_edges(pairs)
    obj = {
        "graph6_G": encode_graph6(g),
        "graph6_H": encode_graph6(h),
        "F": [list(p) for p in res.F],
        "verdict": res.verdict,
    }
    if res.integral:
        obj["shifts"] = list(res.shifts)
        obj["classification"] = res.classification
        obj["patterns"] = res.patterns
    else:
        obj["witness"] = res.witness
    obj["certificate"] = res.certificate
    if args.audit and res.integral and len(pairs) == 1 and "two-place" in res.patterns:
        obj["audit"] = audit_counterexample(g, pairs[0], res).to_json()
    text = res.verdict
    if res.integral:
        text += f" shifts={tuple(res.shifts)} {res.classification}"
    else:
        text += f" witness root ~ {res.witness['approx']:.6g} ({res.witness['reason']})"
    _out(args, obj, text)
    return 0


def cmd_sweep(args):
    suites = tuple(s.strip() for s in args.suites.split(",") if s.strip())
    try:
        cfg = SweepConfig(min_n=args.min_n, max_n=args.max_n, max_f=args.max_f,
                          suites=suites, jobs=args.jobs, checkpoint_path=args.checkpoint,
                          input=args.input, verbose=args.verbose,
                          checkpoint_every=args.checkpoint_every)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        report = run_sweep(cfg, stop_after=args.stop_after)
    except SweepInterrupted as exc:
        print(f"interrupted: {exc}; resume with the same flags", file=sys.stderr)
        return 3
    except CheckpointMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.report:
        emit_report(report, args.report)
    summary = report.summary()
    if args.figures:
        from .plotting import plot_sweep_summary
        os.makedirs(args.figures, exist_ok=True)
        plot_sweep_summary(report, os.path.join(args.figures, "sweep_summary.png"))
    if args.format == "json":
        if not args.report:
            emit_report(report, "-")
        else:
            print(json.dumps(summary))
    else:
        t = summary["totals"]
        print(f"orders {cfg.min_n}..{cfg.max_n}, max_f={summary['config']['max_f']}: "
              f"{t['graphs']} graphs, {t['pairs']} pairs")
        print(f"identities {t['identity_pass']} pass / {t['identity_fail']} fail; "
              f"interlacing {t['interlacing_pass']} / {t['interlacing_fail']}; "
              f"delta {t['delta_pass']} / {t['delta_fail']}")
        print(f"integral variations: {t['integral_hits']} "
              f"(one-place {t['one_place']}, two-place {t['two_place']}, "
              f"multi-edge {t['multi_edge_integral']}); anomalies {t['anomalies']}")
        print(f"status {summary['status']}")
    print(f"wall time {report.wall_time:.2f}s", file=sys.stderr)
    return report.exit_code


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=None,
                        help="output format (default: json for detect, text otherwise)")
    gsrc = argparse.ArgumentParser(add_help=False)
    gsrc.add_argument("-g", "--graph6", help="graph in graph6 format")
    gsrc.add_argument("--edge-list", metavar="FILE",
                      help="graph as edge-list text ('n m' then 'u v' lines, 0-based)")

    p = argparse.ArgumentParser(prog="lmriv", description=__doc__)
    p.add_argument("--version", action="version", version=f"lmriv {__version__}")
    p.add_argument("-v", "--log-level", default="WARNING", help="logging level")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("poly", parents=[common, gsrc],
                        help="Laplacian matching polynomial (constant term first)")
    sp.add_argument("--bruteforce", action="store_true",
                    help="expand over all matchings instead of the recursion")
    sp.add_argument("--matching", action="store_true",
                    help="also print the matching polynomial")
    sp.set_defaults(func=cmd_poly)

    sp = sub.add_parser("roots", parents=[common, gsrc], help="certified real roots")
    sp.add_argument("--width", type=_width, default=DEFAULT_MAX_WIDTH,
                    help="maximum isolating interval width, e.g. 1/1024 (default 2^-30)")
    sp.add_argument("--add", help="also show roots after adding edges 'u-v[,u-v...]'")
    sp.add_argument("--plot", metavar="PNG", help="write a root strip figure")
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("stats", parents=[common, gsrc], help="degree statistics")
    sp.set_defaults(func=cmd_stats)

    sp = sub.add_parser("check", parents=[common, gsrc],
                        help="identity report, delta identities and interlacing")
    sp.add_argument("--identities-only", action="store_true",
                    help="skip the per-non-edge delta and interlacing checks")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("detect", parents=[common, gsrc],
                        help="decide integral root variation for added edges")
    sp.add_argument("--add", required=True, help="edges to add, 'u-v[,u-v...]'")
    sp.add_argument("--audit", action="store_true",
                    help="replay the two-place contradiction chain on a two-place hit")
    sp.set_defaults(func=cmd_detect)

    sp = sub.add_parser("sweep", parents=[common], help="exhaustive sweep over connected graphs")
    sp.add_argument("--min-n", type=int, default=2, help="smallest order (default 2)")
    sp.add_argument("--max-n", type=int, default=6, help="largest order (default 6)")
    sp.add_argument("--max-f", type=_max_f, default=2,
                    help="largest added edge set, integer or 'all' (default 2)")
    sp.add_argument("--suites", default=",".join(SUITES),
                    help=f"comma-separated subset of {','.join(SUITES)}")
    sp.add_argument("--jobs", type=int, default=int(os.environ.get("LMRIV_JOBS", "1")),
                    help="worker processes (default: $LMRIV_JOBS or 1)")
    sp.add_argument("--checkpoint", metavar="PATH",
                    help="checkpoint file; an existing one is resumed")
    sp.add_argument("--checkpoint-every", type=int, default=25,
                    help="graphs between checkpoint writes (default 25)")
    sp.add_argument("--input", default="internal",
                    help="'internal' enumerator, a graph6 file, or '-' for stdin")
    sp.add_argument("--report", metavar="PATH", help="write the JSONL report here")
    sp.add_argument("--figures", metavar="DIR", help="write summary figures into DIR")
    sp.add_argument("--verbose", action="store_true",
                    help="report every (G, F) pair, not only failures and hits")
    sp.add_argument("--stop-after", type=int, default=None,
                    help="stop as if interrupted after this many graphs (resume testing)")
    sp.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "json" if args.command == "detect" else "text"
    logging.basicConfig(level=args.log_level.upper(), format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except RealRootAnomaly as exc:
        print(json.dumps({"anomaly": str(exc), "poly": list(exc.poly.coeffs)}))
        return EXIT_ANOMALY
    except GraphError as exc:
        parser.error(str(exc))
    return 0
