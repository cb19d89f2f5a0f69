"""Command-line entry point: build, verify, solve, export, list-families."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .certify import EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE, verify_document
from .documents import FAMILIES, InstanceDocument, build_document, export_dot
from .solver import (
    INCONCLUSIVE,
    brute_force_frm,
    decompose_and_solve,
    default_budget,
    find_frm,
    max_rainbow_matching,
)

BUDGET_HELP = "node budget for the search (default: RAINBOW_FORGE_BUDGET or 50M; 0 = unlimited)"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(path: str) -> InstanceDocument:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return InstanceDocument.loads(text)


def _budget(args) -> int | None:
    if args.budget is None:
        return default_budget()
    return None if args.budget == 0 else args.budget


def cmd_build(args) -> int:
    params = {k: getattr(args, k) for k in
              ("r", "s", "t", "n", "m", "delta", "a1", "a2", "variant", "host", "prefer")}
    doc = build_document(args.family, params)
    _emit(doc.dumps(), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    doc = _load(args.document)
    report = verify_document(doc, _budget(args), args.threads)
    _emit(json.dumps(report.to_dict(), sort_keys=True, indent=1) + "\n", args.out)
    return report.exit_code


def cmd_solve(args) -> int:
    doc = _load(args.document)
    g, c = doc.graph, doc.coloring
    c.check_partition(g)
    budget = _budget(args)
    if args.max:
        rep = max_rainbow_matching(g, c, "backtracking" if args.method == "backtracking" else "decomposition",
                                   budget)
    elif args.method == "backtracking":
        rep = find_frm(g, c, budget, threads=args.threads)
    elif args.method == "enumeration":
        rep = brute_force_frm(g, c)
    else:
        rep = decompose_and_solve(g, c, budget)
    out = {
        "status": rep.status,
        "method": rep.method,
        "nodes": rep.nodes_explored,
        "seconds": round(rep.elapsed, 6),
        "max_rainbow_size": rep.max_rainbow_size,
        "witness": None if rep.witness is None else {str(k): v for k, v in rep.witness.picks.items()},
    }
    _emit(json.dumps(out, sort_keys=True, indent=1) + "\n", args.out)
    if rep.status == INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_export(args) -> int:
    _emit(export_dot(_load(args.document)), args.out)
    return EXIT_OK


def cmd_list(args) -> int:
    for name, spec in FAMILIES.items():
        flags = " ".join(f"--{p.replace('_', '-')}" for p in spec.params)
        print(f"{name:11s} {flags:30s} {spec.summary}")
    return EXIT_OK


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rainbow-forge",
        description="Build and certify edge-colored hypergraphs without full rainbow matchings.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a named family and print its JSON document")
    b.add_argument("family", help="family name (see list-families)")
    for flag in ("r", "s", "t", "n", "m", "delta", "a1", "a2"):
        b.add_argument(f"--{flag}", type=int)
    b.add_argument("--variant", choices=("residue_s", "residue_s_minus_1"), help="example3 residue variant")
    b.add_argument("--host", help="host multigraph edges such as 0-1,1-2,0-2 (prop41, thm15_1)")
    b.add_argument("--prefer", choices=("simple", "multigraph"), help="thm15_3 gadget preference")
    b.add_argument("--out", help="write to this file instead of stdout")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="check every manifest claim; exit 0 verified, 1 failed, 3 inconclusive")
    v.add_argument("document", help="instance JSON file, or - for stdin")
    v.add_argument("--budget", type=int, help=BUDGET_HELP)
    v.add_argument("--threads", type=int, default=1, help="worker processes for the search (default 1)")
    v.add_argument("--out", help="write the JSON report to this file")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("solve", help="search for a full rainbow matching")
    s.add_argument("document", help="instance JSON file, or - for stdin")
    s.add_argument("--method", choices=("decomposition", "backtracking", "enumeration"),
                   default="decomposition")
    s.add_argument("--max", action="store_true", help="compute the maximum rainbow matching size")
    s.add_argument("--budget", type=int, help=BUDGET_HELP)
    s.add_argument("--threads", type=int, default=1, help="worker processes for backtracking (default 1)")
    s.add_argument("--out", help="write the JSON result to this file")
    s.set_defaults(func=cmd_solve)

    e = sub.add_parser("export", help="render a document as Graphviz DOT")
    e.add_argument("document", help="instance JSON file, or - for stdin")
    e.add_argument("--out", help="write DOT to this file")
    e.set_defaults(func=cmd_export)

    lf = sub.add_parser("list-families", help="list buildable families and their parameters")
    lf.set_defaults(func=cmd_list)
    return p


def main(argv: list[str] | None = None) -> int:
    args = parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
