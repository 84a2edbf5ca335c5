"""
orient-free: command-line surface.

    orient-free orient  --forbid T3 graph.txt [more.txt ...] [--json] [--jobs N]
    orient-free check   graph.txt orientation.txt --forbid B1,B2 [--json]
    orient-free obstruct graph.txt
    orient-free gen tjoin --p 2 --q 2 --merge 01
    orient-free gen donut --p 1 --q 6 [--merge ...] [--mobius]
    orient-free gen std cycle 5 | orient-free orient --forbid T3 -
    orient-free atlas graph.txt [--json]

Exit status: orient 0 yes / 1 no, check 0 iff free, obstruct 0 orientable /
1 obstruction found, 2 on usage, input or internal errors. "-" reads stdin.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from apps.orientation import config
from apps.orientation.classes import atlas, atlas_to_json, format_atlas
from apps.orientation.families import DonutSpec, TJoinSpec, gen_donut, gen_standard, gen_tjoin
from apps.orientation.obstruction import extract_t3_obstruction, obstruction_to_json
from apps.orientation.patterns import ForbiddenSet, parse_forbidden_set, pattern_counts, violations
from apps.orientation.solver import YesCertificate, certificate_to_json, solve
from libs.graph.core import Graph, parse_graph, parse_orientation, write_graph, write_orientation
from libs.graph.errors import GraphFormatError, OrientationError
from libs.utils.logging_setup import get_logger, set_level

logger = get_logger("orient.cli")

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2

_stdin_cache: Optional[str] = None


def _read(path: str) -> str:
    global _stdin_cache
    try:
        if path == "-":
            if _stdin_cache is None:
                _stdin_cache = sys.stdin.read()
            return _stdin_cache
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        name = "stdin" if path == "-" else path
        raise GraphFormatError(f"{name} is not valid UTF-8 text: {e.reason} at byte {e.start}") from None


def _dump(data) -> str:
    return json.dumps(data, indent=2) + "\n"


# --- orient ---

def _orient_one(text: str, forbid: ForbiddenSet, as_json: bool) -> Tuple[str, bool]:
    g = parse_graph(text)
    cert = solve(g, forbid)
    yes = isinstance(cert, YesCertificate)
    if as_json:
        return _dump(certificate_to_json(cert)), yes
    if yes:
        return "# yes\n" + write_orientation(cert.orientation), yes
    lines = ["# no", f"edge {cert.edge[0]} {cert.edge[1]}", f"path {len(cert.path)}"]
    lines.extend(f"{x} {y}" for x, y in cert.path)
    return "\n".join(lines) + "\n", yes


def cmd_orient(args) -> int:
    forbid = parse_forbidden_set(args.forbid)
    if not forbid:
        raise GraphFormatError("--forbid needs at least one pattern")
    texts = [_read(p) for p in args.files]
    jobs = max(1, args.jobs)
    if jobs > 1 and len(texts) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda t: _orient_one(t, forbid, args.json), texts))
    else:
        results = [_orient_one(t, forbid, args.json) for t in texts]

    if len(results) == 1:
        sys.stdout.write(results[0][0])
    elif args.json:
        merged = [{"file": p, **json.loads(out)} for p, (out, _) in zip(args.files, results)]
        sys.stdout.write(_dump(merged))
    else:
        for p, (out, _) in zip(args.files, results):
            sys.stdout.write(f"# file {p}\n{out}")
    return EXIT_YES if all(yes for _, yes in results) else EXIT_NO


# --- check ---

def cmd_check(args) -> int:
    forbid = parse_forbidden_set(args.forbid)
    g = parse_graph(_read(args.graph))
    o = parse_orientation(_read(args.orientation), g)
    found = violations(o, forbid)
    if logger.isEnabledFor(logging.INFO):
        census = {p.value: c for p, c in pattern_counts(o).items() if c}
        logger.info("orientation checked", extra={"payload": {"violations": len(found), "patterns": census}})
    if args.json:
        sys.stdout.write(_dump([{"triple": list(v.triple), "pattern": v.pattern.value} for v in found]))
    else:
        for v in found:
            a, b, c = v.triple
            sys.stdout.write(f"{a} {b} {c} {v.pattern.value}\n")
    return EXIT_YES if not found else EXIT_NO


# --- obstruct ---

def cmd_obstruct(args) -> int:
    g = parse_graph(_read(args.file))
    obs = extract_t3_obstruction(g)
    if obs is None:
        sys.stdout.write("orientable\n")
        return EXIT_YES
    sys.stdout.write(_dump(obstruction_to_json(obs)))
    return EXIT_NO


# --- gen ---

def _sizes(text: Optional[str]) -> Optional[List[int]]:
    if text is None:
        return None
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise GraphFormatError(f"size must be an integer or a comma-separated list, got {text!r}") from None


def cmd_gen(args) -> int:
    if args.family == "tjoin":
        g = gen_tjoin(TJoinSpec(args.p, args.q, args.merge))
    elif args.family == "donut":
        tj = TJoinSpec(args.p, args.q, args.merge) if args.merge is not None else TJoinSpec.default(args.p, args.q)
        g = gen_donut(DonutSpec(tj, mobius=args.mobius))
    else:
        base: Optional[Graph] = parse_graph(_read(args.base)) if args.base else None
        g = gen_standard(args.name, _sizes(args.size), base=base)
    sys.stdout.write(write_graph(g))
    return EXIT_YES


# --- atlas ---

def cmd_atlas(args) -> int:
    g = parse_graph(_read(args.file))
    rows = atlas(g, oracle_cap=args.oracle_cap)
    if args.json:
        sys.stdout.write(_dump(atlas_to_json(rows)))
    else:
        sys.stdout.write(format_atlas(rows))
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orient-free",
                                     description="Forbidden-orientation decisions with certificates")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log at INFO level")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orient", help="Decide F-orientability for a simple forbidden set")
    p.add_argument("files", nargs="+", help="Edge-list files, '-' for stdin")
    p.add_argument("--forbid", required=True, help="Comma-separated patterns, e.g. B1,T3")
    p.add_argument("--json", action="store_true", help="Print the certificate as JSON")
    p.add_argument("--jobs", type=int, default=config.DEFAULT_JOBS, help="Worker threads for several files")
    p.set_defaults(func=cmd_orient)

    p = sub.add_parser("check", help="List forbidden triples of an orientation")
    p.add_argument("graph")
    p.add_argument("orientation")
    p.add_argument("--forbid", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("obstruct", help="Extract a donut obstruction to T3-orientability")
    p.add_argument("file")
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("gen", help="Generate a graph as an edge list")
    fam = p.add_subparsers(dest="family", required=True)
    t = fam.add_parser("tjoin")
    t.add_argument("--p", type=int, required=True)
    t.add_argument("--q", type=int, required=True)
    t.add_argument("--merge", required=True, help="0 advances on P, 1 advances on Q")
    d = fam.add_parser("donut")
    d.add_argument("--p", type=int, required=True)
    d.add_argument("--q", type=int, required=True)
    d.add_argument("--merge", default=None, help="Default: all P steps first")
    d.add_argument("--mobius", action="store_true")
    s = fam.add_parser("std")
    s.add_argument("name")
    s.add_argument("size", nargs="?", default=None, help="Integer or comma-separated part sizes")
    s.add_argument("--base", default=None, help="Input graph for 'mycielski'")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("atlas", help="Cross-check all forbidden sets against graph classes")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--oracle-cap", type=int, default=None, help="Edge cap for oracle rows")
    p.set_defaults(func=cmd_atlas)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    global _stdin_cache
    _stdin_cache = None
    args = build_parser().parse_args(argv)
    if args.verbose:
        set_level("INFO")
    logger.info("command", extra={"payload": {"command": args.command,
                                              "forbid": getattr(args, "forbid", None)}})
    try:
        return args.func(args)
    except OrientationError as e:
        logger.info("command failed", extra={"payload": {"error": type(e).__name__}})
        sys.stderr.write(f"orient-free: {e}\n")
        return EXIT_ERROR
    except OSError as e:
        sys.stderr.write(f"orient-free: {e}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
