"""Command-line front end.

Exit status: 0 success, 2 usage error, 3 unreadable or malformed input,
4 no feasible bound, 5 measure undefined for the input, 1 anything else.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from decimal import Decimal, InvalidOperation

from . import __version__
from .ablation import run_ablation
from .bounds import (
    InvalidDegreeSequence,
    load_degree_sequence,
    degree_sequence_bound,
    trivial_bound,
)
from .chains import ChainParseError, chain_summary, load_chains, summaries_to_json, summaries_to_tsv
from .graph import GraphParseError, NodeRangeError, degree_sequence, read_edge_list
from .metrics import UndefinedMetric, format_tsv, metrics_report
from .nf import DEFAULT_EPS, DEFAULT_LOG2M, DEFAULT_MAX_T, distribution_from_nf, exact_nf, hll_nf, nf_to_tsv

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_INFEASIBLE = 4
EXIT_UNDEFINED = 5

EPILOG = """\
exit status:
  0  success
  2  usage error (unknown flag, bad value)
  3  unreadable or malformed input file
  4  no feasible bound for the given scalars
  5  measure undefined for the input (e.g. empty graph)
  1  other failure

environment:
  DEGSEP_SEED     default hash seed for --hll (default 0)
  DEGSEP_THREADS  default worker threads (default 1)
"""


class UsageError(Exception):
    pass


def _env_int(name: str, default: int) -> int:
    value = os.environ.get(name)
    if value is None or value == "":
        return default
    try:
        return int(value, 0)
    except ValueError:
        raise UsageError(f"{name}={value!r} is not an integer") from None


def parse_scalar(text: str):
    """Integer if the value is integral (``5e17`` included), else float."""
    try:
        d = Decimal(text)
    except InvalidOperation:
        raise UsageError(f"not a number: {text!r}") from None
    if not d.is_finite():
        raise UsageError(f"not a finite number: {text!r}")
    if d == d.to_integral_value():
        return int(d)
    return float(d)


def parse_assignments(items: list[str]) -> dict:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or key not in ("n", "m", "D", "r"):
            raise UsageError(f"expected n=, m=, D= or r=, got {item!r}")
        out[key] = parse_scalar(value)
    return out


def _add_estimator_args(p: argparse.ArgumentParser) -> None:
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="mode", action="store_const", const="exact",
                      help="exact computation (default)")
    mode.add_argument("--hll", dest="mode", action="store_const", const="estimated",
                      help="HyperLogLog estimate")
    p.set_defaults(mode="exact")
    p.add_argument("--log2m", "-b", type=int, default=DEFAULT_LOG2M,
                   help="log2 of the registers per counter (4..16)")
    p.add_argument("--seed", type=lambda s: int(s, 0), default=None)
    p.add_argument("--eps", type=float, default=DEFAULT_EPS,
                   help="stop when the relative change falls below this")
    p.add_argument("--max-t", type=int, default=DEFAULT_MAX_T)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--directed", action="store_true", help="read arcs as directed")


def _add_format(p: argparse.ArgumentParser, default: str = "json") -> None:
    p.add_argument("--format", choices=("json", "tsv"), default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="degsep",
        description="Distance-distribution statistics for graphs and chain experiments.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="average distance, confidence, harmonic diameter, median")
    p.add_argument("graph")
    _add_estimator_args(p)
    _add_format(p)

    p = sub.add_parser("nf", help="dump the neighborhood function")
    p.add_argument("graph")
    _add_estimator_args(p)
    _add_format(p, default="tsv")

    p = sub.add_parser("bounds", help="lower bounds on the average distance")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--first", action="store_true", help="bound from the scalars n, m, D, r")
    src.add_argument("--degrees", metavar="FILE", help="degree-sequence file (one degree per line)")
    src.add_argument("--graph", metavar="FILE", help="edge-list file")
    p.add_argument("scalars", nargs="*", metavar="KEY=VALUE", help="n=, m=, D=, r=")
    p.add_argument("--directed", action="store_true")
    p.add_argument("--max-ell", type=int, default=3)
    _add_format(p)

    p = sub.add_parser("ablate", help="remove highest in-degree nodes and recompute")
    p.add_argument("graph")
    p.add_argument("--targets", default="0.1,0.3", help="comma-separated arc fractions")
    _add_estimator_args(p)
    _add_format(p, default="tsv")

    p = sub.add_parser("chains", help="chain-experiment statistics")
    p.add_argument("chains")
    _add_format(p, default="tsv")
    return parser


def _estimator_kwargs(args) -> dict:
    return {"log2m": args.log2m, "seed": args.seed, "eps": args.eps, "max_t": args.max_t}


def _resolve_defaults(args) -> None:
    if getattr(args, "seed", 0) is None:
        args.seed = _env_int("DEGSEP_SEED", 0)
    if getattr(args, "threads", 0) is None:
        args.threads = _env_int("DEGSEP_THREADS", 1)
    if getattr(args, "threads", 1) < 1:
        raise UsageError("--threads must be at least 1")
    if getattr(args, "eps", 0) < 0:
        raise UsageError("--eps must be nonnegative")


def _neighborhood(g, args):
    if args.mode == "exact":
        return exact_nf(g, threads=args.threads)
    return hll_nf(g, threads=args.threads, **_estimator_kwargs(args))


def cmd_stats(args) -> tuple[str, int]:
    g = read_edge_list(args.graph, args.directed)
    report = metrics_report(distribution_from_nf(_neighborhood(g, args)), directed=g.directed, m=g.m)
    return (report.to_json() + "\n" if args.format == "json" else report.to_tsv()), EXIT_OK


def cmd_nf(args) -> tuple[str, int]:
    g = read_edge_list(args.graph, args.directed)
    nf = _neighborhood(g, args)
    if args.format == "tsv":
        return nf_to_tsv(nf), EXIT_OK
    doc = {"n": nf.n, "exact": nf.exact, "params": nf.params, "values": list(nf.values)}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n", EXIT_OK


def cmd_bounds(args) -> tuple[str, int]:
    scalars = parse_assignments(args.scalars)
    results = {}
    if args.first:
        missing = {"n", "m", "D", "r"} - scalars.keys()
        if missing:
            raise UsageError(f"--first needs {', '.join(sorted(missing))}")
        inputs = scalars
    else:
        if args.degrees:
            with open(args.degrees, encoding="ascii") as fh:
                seq = load_degree_sequence(fh)
        else:
            g = read_edge_list(args.graph, args.directed)
            seq = degree_sequence(g)
            if "r" not in scalars:
                scalars["r"] = exact_nf(g).values[-1]
        n = scalars.get("n", len(seq))
        inputs = {
            "n": n,
            "m": scalars.get("m", sum(seq)),
            "D": scalars.get("D", seq[0] if seq else 0),
            "r": scalars.get("r", n * n),
        }
    if inputs["r"] <= 0 or inputs["r"] < inputs["n"]:
        raise UsageError("need r >= n and r > 0")
    if not args.first:
        results["degree_sequence"] = degree_sequence_bound(seq, inputs["r"], inputs["n"])
    results["trivial"] = trivial_bound(inputs["n"], inputs["m"], inputs["D"], inputs["r"], args.max_ell)
    results = dict(sorted(results.items()))

    status = EXIT_OK if any(res.feasible for res in results.values()) else EXIT_INFEASIBLE
    if args.format == "json":
        doc = {"inputs": inputs}
        doc.update({name: res.to_dict() for name, res in results.items()})
        return json.dumps(doc, indent=2, sort_keys=True) + "\n", status
    lines = ["bound\tavg_lower_bound\tell_used\tfeasible"]
    for name, res in results.items():
        lines.append(f"{name}\t{format_tsv(res.avg_lower_bound)}\t{res.ell_used}\t{format_tsv(res.feasible)}")
    return "\n".join(lines) + "\n", status


def cmd_ablate(args) -> tuple[str, int]:
    try:
        targets = [float(t) for t in args.targets.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad --targets {args.targets!r}") from None
    g = read_edge_list(args.graph, args.directed)
    try:
        report = run_ablation(g, targets, mode=args.mode, threads=args.threads, **_estimator_kwargs(args))
    except UndefinedMetric:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return (report.to_json() + "\n" if args.format == "json" else report.to_tsv()), EXIT_OK


def cmd_chains(args) -> tuple[str, int]:
    with open(args.chains, encoding="utf-8") as fh:
        datasets = load_chains(fh)
    if not datasets:
        raise UndefinedMetric("no chains in input")
    summaries = [chain_summary(c) for c in datasets]
    if args.format == "json":
        return summaries_to_json(summaries) + "\n", EXIT_OK
    return summaries_to_tsv(summaries), EXIT_OK


COMMANDS = {
    "stats": cmd_stats,
    "nf": cmd_nf,
    "bounds": cmd_bounds,
    "ablate": cmd_ablate,
    "chains": cmd_chains,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _resolve_defaults(args)
        if getattr(args, "mode", "exact") == "estimated" and not 4 <= args.log2m <= 16:
            raise UsageError("--log2m must be in [4, 16]")
        text, status = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"degsep: {exc}", file=stderr)
        return EXIT_USAGE
    except (OSError, UnicodeDecodeError, GraphParseError, NodeRangeError,
            InvalidDegreeSequence, ChainParseError) as exc:
        print(f"degsep: {exc}", file=stderr)
        return EXIT_INPUT
    except UndefinedMetric as exc:
        print(f"degsep: {exc}", file=stderr)
        return EXIT_UNDEFINED
    except Exception as exc:  # pragma: no cover
        print(f"degsep: unexpected error: {exc!r}", file=stderr)
        return EXIT_ERROR
    stdout.write(text)
    if status == EXIT_INFEASIBLE:
        print("degsep: no feasible bound for these inputs", file=stderr)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
