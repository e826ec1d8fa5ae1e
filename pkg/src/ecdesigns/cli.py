"""Command-line entry point.

Exit codes: 0 success / property holds, 1 property fails, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from typing import Sequence

from . import constructions as C
from .analysis import find_sub_system
from .blocksfile import BlocksFileError, parse_blocks_file, read_blocks_path, write_blocks_file
from .design import Design, DesignError, is_simple, validate_t_design
from .ec import ECRangeError, find_dominating_union_pair, is_2_ec_fast, is_n_ec, xi_with_flag
from .graphs import Graph, build_big, build_s_big, degree_stats
from .paper_suite import EXTRA_CHECKS, run_suite

__all__ = ["main", "run_command", "parse_blocks_file", "write_blocks_file"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
THREADS_ENV = "EC_DESIGNS_THREADS"


class UsageError(Exception):
    pass


def thread_count() -> int:
    """Worker cap from the environment; 0 means automatic."""
    raw = os.environ.get(THREADS_ENV, "").strip()
    if not raw:
        return 0
    if not raw.isdigit():
        raise UsageError(f"{THREADS_ENV} must be a non-negative integer, got {raw!r}")
    return int(raw)


def parse_cyclic_spec(spec: str) -> Design:
    """``cyclic:<v>:<b1>/<b2>/...`` with comma-separated base block entries."""
    try:
        _, v, bases = spec.split(":")
        base = [[int(x) for x in blk.split(",")] for blk in bases.split("/")]
        return C.develop_cyclic(int(v), base)
    except (ValueError, DesignError) as exc:
        raise UsageError(f"bad cyclic spec {spec!r}: {exc}") from exc


def load_design(source: str, seed: int) -> Design:
    if source == "ts9_2":
        return C.ts9_2(seed)
    if C.is_builtin(source):
        return C.builtin(source)
    if source.startswith("cyclic:"):
        return parse_cyclic_spec(source)
    if not os.path.exists(source):
        raise UsageError(f"{source!r} is neither a builtin design nor a file")
    return read_blocks_path(source)


def _parse_ints(values: Sequence[str]) -> list[int]:
    out = []
    for v in values:
        out.extend(int(x) for x in v.replace(",", " ").split())
    return out


def _graph(D: Design, mode: str, s_values) -> Graph:
    if mode == "big":
        return build_big(D)
    if not s_values:
        raise UsageError("--s is required with sbig mode")
    return build_s_big(D, _parse_ints(s_values))


def _design_info(source: str, D: Design) -> dict:
    return {
        "source": source,
        "v": D.v,
        "b": D.b,
        "block_sizes": sorted(D.block_sizes),
        "simple": is_simple(D),
    }


def _witness(res) -> dict | None:
    if res.witness_failure is None:
        return None
    A, B = res.witness_failure
    return {"A": list(A), "B": list(B)}


def _cmd_construct(args, report):
    D = load_design(args.source, args.seed)
    report["design"] = _design_info(args.source, D)
    report["blocks"] = [list(b) for b in D.blocks]
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(write_blocks_file(D))
        report["written"] = args.out
    return EXIT_OK


def _cmd_validate(args, report):
    D = load_design(args.source, args.seed)
    report["design"] = _design_info(args.source, D)
    rep = validate_t_design(D, args.t, args.k, args.lam)
    report["validation"] = {
        "params": {"t": args.t, "k": args.k, "lambda": args.lam},
        "ok": rep.ok,
        "violations": [
            {"kind": x.kind, "subset": list(x.subset), "observed": x.observed, "expected": x.expected}
            for x in rep.violations
        ],
        "truncated": rep.truncated,
        "derived": rep.derived,
    }
    return EXIT_OK if rep.ok else EXIT_FAIL


def _cmd_graph(args, report):
    D = load_design(args.source, args.seed)
    G = _graph(D, args.mode, args.s)
    st = degree_stats(G)
    report["design"] = _design_info(args.source, D)
    report["graph"] = {
        "mode": args.mode,
        "s": _parse_ints(args.s) if args.mode == "sbig" else None,
        "n": st.n,
        "edges": G.edge_count(),
        "min_degree": st.min_degree,
        "max_degree": st.max_degree,
        "connected": st.is_connected,
    }
    if args.export:
        with open(args.export, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(f"n {G.n}\nm {G.edge_count()}\n")
            fh.writelines(f"{u} {w}\n" for u, w in G.edges())
        report["graph"]["exported"] = args.export
    return EXIT_OK


def _cmd_ec(args, report):
    D = load_design(args.source, args.seed)
    G = _graph(D, args.graph_mode, args.s)
    try:
        res = is_2_ec_fast(G) if args.n == 2 else is_n_ec(G, args.n)
    except ECRangeError as exc:
        raise UsageError(str(exc)) from exc
    report["design"] = _design_info(args.source, D)
    report["ec"] = {
        "graph_mode": args.graph_mode,
        "n": args.n,
        "holds": res.holds,
        "witness_failure": _witness(res),
        "checked_pairs": res.checked_pairs,
    }
    return EXIT_OK if res.holds else EXIT_FAIL


def _cmd_xi(args, report):
    D = load_design(args.source, args.seed)
    G = _graph(D, args.graph_mode, args.s)
    value, capped = xi_with_flag(G, args.cap)
    report["design"] = _design_info(args.source, D)
    report["xi"] = {
        "graph_mode": args.graph_mode,
        "value": value,
        "at_least": capped,
        "cap": args.cap,
        "two_ec": value >= 2,
    }
    return EXIT_OK


def _cmd_dominate(args, report):
    D = load_design(args.source, args.seed)
    pair = find_dominating_union_pair(D)
    report["design"] = _design_info(args.source, D)
    report["dominating_pair"] = (
        None if pair is None else {"indices": list(pair), "blocks": [list(D.blocks[i]) for i in pair]}
    )
    return EXIT_OK if pair is not None else EXIT_FAIL


def _cmd_subsys(args, report):
    D = load_design(args.source, args.seed)
    try:
        H = find_sub_system(D, args.w, args.k, args.lam)
    except DesignError as exc:
        raise UsageError(str(exc)) from exc
    report["design"] = _design_info(args.source, D)
    report["sub_system"] = {
        "params": {"w": args.w, "k": args.k, "lambda": args.lam},
        "points": None if H is None else list(H),
    }
    return EXIT_OK if H is not None else EXIT_FAIL


def _cmd_verify(args, report):
    extras = {}
    for item in args.extra:
        key, sep, path = item.partition("=")
        if not sep or key not in EXTRA_CHECKS:
            raise UsageError(f"--extra expects one of {sorted(EXTRA_CHECKS)}=<path>, got {item!r}")
        extras[key] = read_blocks_path(path)
    suite = run_suite(fast=args.fast, extras=extras, seed=args.seed)
    report["suite"] = suite
    return EXIT_OK if suite["passed"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--seed", type=int, default=C.DEFAULT_SEED)

    parser = argparse.ArgumentParser(prog="ecdesigns", description="Block designs and existential closure.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a named or cyclic design")
    p.add_argument("source", help="builtin name or cyclic:<v>:<a,b,c>/<d,e,f>")
    p.add_argument("--out", help="write a blocks file here")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("validate", parents=[common], help="check t-design axioms")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("source")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("graph", parents=[common], help="block intersection graph statistics")
    p.add_argument("--mode", choices=["big", "sbig"], default="big")
    p.add_argument("--s", action="append", default=[], help="intersection sizes, e.g. 0,2")
    p.add_argument("--export", help="write the edge list here")
    p.add_argument("source")
    p.set_defaults(func=_cmd_graph)

    for name, helptext in (("ec", "n-e.c. test"), ("xi", "existential closure number")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        if name == "ec":
            p.add_argument("--n", type=int, required=True)
            p.set_defaults(func=_cmd_ec)
        else:
            p.add_argument("--cap", type=int, default=4)
            p.set_defaults(func=_cmd_xi)
        p.add_argument("--graph-mode", choices=["big", "sbig"], default="big")
        p.add_argument("--s", action="append", default=[], help="intersection sizes, e.g. 0,2")
        p.add_argument("source")

    p = sub.add_parser("dominate", parents=[common], help="find two blocks whose union meets every block")
    p.add_argument("source")
    p.set_defaults(func=_cmd_dominate)

    p = sub.add_parser("subsys", parents=[common], help="find a sub-design on w points")
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("source")
    p.set_defaults(func=_cmd_subsys)

    p = sub.add_parser("verify-paper", parents=[common], help="run every reproduction check")
    p.add_argument("--fast", action="store_true", help="skip stress checks")
    p.add_argument("--extra", action="append", default=[], metavar="NAME=PATH")
    p.set_defaults(func=_cmd_verify)
    return parser


def run_command(argv: Sequence[str]) -> tuple[int, dict]:
    """Run one subcommand; returns the exit code and the report."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
        return code, {"error": "usage"}
    report: dict = {"command": args.command, "seed": args.seed}
    start = time.perf_counter()
    try:
        report["threads"] = thread_count()
        code = args.func(args, report)
    except (UsageError, BlocksFileError, DesignError, KeyError) as exc:
        report["error"] = str(exc).strip("'\"")
        code = EXIT_USAGE
    report["exit_code"] = code
    report["seconds"] = round(time.perf_counter() - start, 4)
    return code, report


def jsonable(obj):
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(jsonable(x) for x in obj)
    return obj


def render_text(report: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for key, value in report.items():
        if key == "blocks":
            lines.append(f"{pad}blocks: {len(value)}")
            lines.extend(f"{pad}  {' '.join(map(str, b))}" for b in value)
        elif isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(render_text(value, indent + 1))
        elif key == "checks":
            lines.append(f"{pad}checks:")
            for chk in value:
                mark = "PASS" if chk["passed"] else "FAIL"
                lines.append(f"{pad}  [{mark}] {chk['id']} {chk['title']} ({chk['seconds']:.2f}s) -- {chk['citation']}")
                if chk["error"]:
                    lines.append(f"{pad}      error: {chk['error']}")
                for item, ok in chk["items"].items():
                    lines.append(f"{pad}      {'ok  ' if ok else 'FAIL'} {item}")
        else:
            lines.append(f"{pad}{key}: {value}")
    return "\n".join(line for line in lines if line)


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    code, report = run_command(argv)
    if report.get("error") == "usage":
        return code
    doc = jsonable(report)
    if "--json" in argv:
        print(json.dumps(doc, indent=2))
    else:
        print(render_text(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())
