"""Command-line interface: ``mcov analyze | verify | generate | checks``."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import fields

from mcov.constructors import CatalogError, enumerate_family_G, named_graph, staircase
from mcov.graph import Graph6Error, GraphError, read_graph6_lines, to_graph6
from mcov.harness import (
    REGISTRY,
    AnalysisReport,
    UnknownCheckError,
    analyze,
    reports_to_json,
    run_checks,
)

EXIT_OK, EXIT_VIOLATIONS, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors exit with 2, as argparse does, but uniformly
        self.print_usage(sys.stderr)
        print(f"mcov: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _open_input(path: str):
    if path == "-":
        return sys.stdin
    return open(path, encoding="ascii", errors="strict")


def cmd_analyze(args) -> int:
    with _open_input(args.file) as fh:
        rows = [(text, analyze(g)) for _, text, g in read_graph6_lines(fh)]
    names = [f.name for f in fields(AnalysisReport)]
    if args.json:
        out = [{"graph6": t, **r.as_dict()} for t, r in rows]
        json.dump(out, sys.stdout, indent=2)
        sys.stdout.write("\n")
    elif args.csv:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["graph6", *names])
        for t, r in rows:
            d = r.as_dict()
            w.writerow([t, *("" if d[k] is None else d[k] for k in names)])
    else:
        for t, r in rows:
            d = r.as_dict()
            print(t)
            for k in names:
                print(f"  {k}: {'n/a' if d[k] is None else d[k]}")
    return EXIT_OK


def cmd_verify(args) -> int:
    ids = [c for c in args.check.split(",") if c]
    if not ids:
        raise UnknownCheckError("empty check list")
    with _open_input(args.input) as fh:
        reports = run_checks(fh, ids, jobs=args.jobs)
    for r in reports:
        status = "FAIL" if r.violations else "ok"
        print(f"{r.check_id}: {status}  inputs={r.inputs_processed} in_scope={r.summary['in_scope']} violations={len(r.violations)}")
        if "notice" in r.summary:
            print(f"  notice: {r.summary['notice']}", file=sys.stderr)
        for v in r.violations[:5]:
            print(f"  {v['graph6']}: {v['detail']}")
    if args.json:
        text = reports_to_json(reports)
        if args.json == "-":
            sys.stdout.write(text)
        else:
            with open(args.json, "w") as fh:
                fh.write(text)
    return EXIT_VIOLATIONS if any(r.violations for r in reports) else EXIT_OK


def cmd_generate(args) -> int:
    if args.name:
        if args.family:
            raise GraphError("--name cannot be combined with --family")
        graphs = [named_graph(args.name)]
    elif args.family == "staircase":
        if args.k is None:
            raise GraphError("--family staircase needs --k")
        graphs = [staircase(args.k)]
    elif args.family == "gfamily":
        if args.max_n is None:
            raise GraphError("--family gfamily needs --max-n")
        graphs = enumerate_family_G(args.max_n)
    else:
        raise GraphError("give --family staircase|gfamily or --name")
    for g in graphs:
        print(to_graph6(g))
    return EXIT_OK


def cmd_checks(args) -> int:
    for c in REGISTRY.values():
        print(f"{c.id:20s} {c.description}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mcov", description="Matching-covered graph toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="classify every graph in a graph6 file")
    a.add_argument("file", help="graph6 file, one graph per line ('-' for stdin)")
    fmt = a.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="emit JSON")
    fmt.add_argument("--csv", action="store_true", help="emit CSV")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="run registered checks over a graph6 census")
    v.add_argument("--check", required=True, help="comma-separated check ids (see 'mcov checks')")
    v.add_argument("--input", required=True, help="graph6 file ('-' for stdin)")
    v.add_argument("--jobs", type=int, default=1, help="worker processes (MCOV_JOBS overrides)")
    v.add_argument("--json", metavar="OUT", help="write the JSON report here ('-' for stdout)")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("generate", help="emit graph6 for constructed or catalog graphs")
    g.add_argument("--family", choices=["staircase", "gfamily"])
    g.add_argument("--k", type=int, help="staircase parameter")
    g.add_argument("--max-n", type=int, help="largest order for the triangle-insertion family")
    g.add_argument("--name", help="catalog graph name")
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("checks", help="list the check registry")
    c.set_defaults(func=cmd_checks)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnknownCheckError as exc:
        print(f"mcov: unknown check id {exc.args[0]!r}; see 'mcov checks'", file=sys.stderr)
    except Graph6Error as exc:
        print(f"mcov: input error: {exc}", file=sys.stderr)
    except (GraphError, CatalogError) as exc:
        print(f"mcov: error: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"mcov: cannot read input: {exc}", file=sys.stderr)
    except UnicodeDecodeError as exc:
        print(f"mcov: input error: non-ASCII byte at offset {exc.start}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
