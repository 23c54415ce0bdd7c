"""Command-line entry point.

Exit codes: 0 success or pass, 1 a checked property failed or a claim did
not match, 2 usage or parse error, 3 timeout with an inconclusive result.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any

from . import __version__
from .certificates import check_certificate, format_clique, format_coloring
from .constructions import (MYCIELSKI, BlockSpec, ClassSpec, SliceEntry, build_block, mycielski_tower,
                            mycielskian, parse_m_range, write_claims)
from .dimacs import read_dimacs, write_dimacs
from .errors import ChiboundError, ClaimMismatch, SolverTimeout
from .solvers import (brute_force_chi, brute_force_omega, chi_restricted, chromatic_number,
                      clique_number, default_budget, k_colorable)
from .verification import (DEFAULT_SAMPLES, EXACT_ORDER_LIMIT, BoundingTable, Polynomial,
                           check_block_observation, check_goodness, check_mycielski_lemma,
                           check_pollyanna_implication, find_nonpoly_witness, pollyanna_bound,
                           verify_all)

log = logging.getLogger("chibound")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_TIMEOUT = 0, 1, 2, 3
STATUS_EXIT = {"pass": EXIT_OK, "fail": EXIT_FAIL, "inconclusive": EXIT_TIMEOUT}


class UsageError(Exception):
    pass


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("budget must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=_positive_float, default=None,
                        help="seconds per exact solve (default: $CHIBOUND_BUDGET or 120)")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for random sampling")
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    common.add_argument("--deterministic", action="store_true", help="force a single worker")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="chibound", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    top = parser.add_subparsers(dest="command", required=True)

    gen = top.add_parser("gen", help="generate graphs").add_subparsers(dest="what", required=True)
    p = gen.add_parser("mycielski", parents=[common], help="Mycielskian of a DIMACS graph")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p = gen.add_parser("tower", parents=[common], help="Mycielski tower T_r")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("-o", "--output", required=True)
    p = gen.add_parser("block", parents=[common], help="tagged block X_{r,m}")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--provider", default=MYCIELSKI, help="core graph file for r >= 3")
    p.add_argument("-o", "--output", required=True)

    solve = top.add_parser("solve", help="exact solvers").add_subparsers(dest="what", required=True)
    for name in ("chi", "omega"):
        solve.add_parser(name, parents=[common]).add_argument("graph")
    p = solve.add_parser("chi-n", parents=[common], help="largest chi over induced subgraphs with omega <= n")
    p.add_argument("graph")
    p.add_argument("--n", type=int, required=True)
    p = solve.add_parser("k-color", parents=[common])
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)

    verify = top.add_parser("verify", help="run checks").add_subparsers(dest="what", required=True)
    verify.add_parser("mycielski-lemma", parents=[common]).add_argument("graph")
    p = verify.add_parser("block", parents=[common])
    _block_args(p)
    p.add_argument("--exact-limit", type=int, default=EXACT_ORDER_LIMIT)
    p = verify.add_parser("goodness", parents=[common])
    _block_args(p, m_range=True)
    _sampling_args(p)
    p.add_argument("--samples", action="store_true", help="include every sample in the report")
    p = verify.add_parser("nonpoly", parents=[common])
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--poly", required=True, help="coefficients c0,c1,...,cd")
    p.add_argument("--provider", default=MYCIELSKI)
    p.add_argument("--exact-limit", type=int, default=EXACT_ORDER_LIMIT)
    p = verify.add_parser("pollyanna", parents=[common])
    p.add_argument("--phi", required=True, help="table phi(1),phi(2),...")
    p.add_argument("--r", type=int, default=None, help="also check blocks at this r")
    p.add_argument("--m", default="1", help="m values for --r, e.g. 1..3")
    _sampling_args(p)
    p = verify.add_parser("all", parents=[common])
    p.add_argument("--slice", help="JSON slice description")
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--m", default="1..4")
    p.add_argument("--poly", default=None)
    p.add_argument("--exact-limit", type=int, default=EXACT_ORDER_LIMIT)
    _sampling_args(p)
    p = verify.add_parser("cert", parents=[common], help="check a certificate file")
    p.add_argument("graph")
    p.add_argument("certificate")

    oracle = top.add_parser("oracle", help="brute-force oracles").add_subparsers(dest="what", required=True)
    for name in ("chi", "omega"):
        oracle.add_parser(name, parents=[common]).add_argument("graph")
    return parser


def _block_args(p: argparse.ArgumentParser, m_range: bool = False) -> None:
    p.add_argument("--r", type=int, required=True)
    if m_range:
        p.add_argument("--m", default="1", help="m values, e.g. 1..4")
    else:
        p.add_argument("--m", type=int, required=True)
    p.add_argument("--provider", default=MYCIELSKI, help="core graph file for r >= 3")


def _sampling_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--strategy", choices=("exhaustive", "random"), default="exhaustive")
    p.add_argument("--limit", type=int, default=DEFAULT_SAMPLES)


# --- output --------------------------------------------------------------------


def _render_table(doc: dict[str, Any]) -> str:
    rows: list[tuple[str, str]] = []

    def walk(prefix: str, value: Any) -> None:
        if isinstance(value, dict) and set(value) == {"value", "provenance"}:
            rows.append((prefix, f"{value['value']} [{value['provenance']}]"))
        elif isinstance(value, dict):
            for k, v in value.items():
                walk(f"{prefix}.{k}" if prefix else str(k), v)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            for i, v in enumerate(value):
                walk(f"{prefix}[{i}]", v)
        else:
            rows.append((prefix, json.dumps(value) if isinstance(value, (list, bool)) or value is None
                         else str(value)))

    walk("", doc)
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def _emit(doc: dict[str, Any], args: argparse.Namespace) -> None:
    doc = {**doc, "seed": args.seed}
    if args.format == "table":
        print(_render_table(doc))
    else:
        print(json.dumps(doc, indent=2))


# --- commands --------------------------------------------------------------------


def _cmd_gen(args: argparse.Namespace, budget: float) -> int:
    out = Path(args.output)
    if args.what == "mycielski":
        M, _ = mycielskian(read_dimacs(args.input))
        write_dimacs(M, out, [f"Mycielskian of {args.input}"])
    elif args.what == "tower":
        T, chi = mycielski_tower(args.r)
        write_dimacs(T, out, [f"Mycielski tower T_{args.r}"])
        write_claims(out, args.r, args.r, 2, chi, f"Mycielski tower T_{args.r}")
    else:
        X = build_block(BlockSpec(args.r, args.m, args.provider), budget)
        write_dimacs(X.graph, out, [f"block X({args.r},{args.m}); tag = last {len(X.tag_vertices)} vertices"])
        write_claims(out, args.r, args.m, args.r, args.m, f"block core={args.provider} tag=T_{args.r}")
    return EXIT_OK


def _cmd_solve(args: argparse.Namespace, budget: float) -> int:
    G = read_dimacs(args.graph)
    if args.what == "chi":
        res = chromatic_number(G, budget)
        sys.stdout.write(format_coloring(res.certificate))
    elif args.what == "omega":
        res = clique_number(G, budget)
        sys.stdout.write(format_clique(res.certificate))
    elif args.what == "chi-n":
        rres = chi_restricted(G, args.n, budget)
        print(f"chi_n {args.n} {rres.value}")
        for v in rres.witness:
            print(f"member {v}")
        if rres.timed_out:
            print("timed out: value is a lower bound", file=sys.stderr)
            return EXIT_TIMEOUT
        return EXIT_OK
    else:
        try:
            col = k_colorable(G, args.k, budget)
        except SolverTimeout:
            print(f"unknown: search for a {args.k}-colouring did not finish", file=sys.stderr)
            return EXIT_TIMEOUT
        if col is None:
            print(f"none {args.k}")
            return EXIT_FAIL
        sys.stdout.write(format_coloring(col))
        return EXIT_OK
    if res.timed_out:
        print(f"timed out: value lies in [{res.lower}, {res.upper}]", file=sys.stderr)
        return EXIT_TIMEOUT
    return EXIT_OK


def _slice_from_args(args: argparse.Namespace) -> ClassSpec:
    if args.slice:
        return ClassSpec.load(args.slice)
    if args.r is None:
        raise UsageError("verify all needs --slice or --r")
    return ClassSpec((SliceEntry(args.r, parse_m_range(args.m)),))


def _cmd_verify(args: argparse.Namespace, budget: float, jobs: int) -> int:
    if args.what == "cert":
        kind, value, ok = check_certificate(read_dimacs(args.graph), Path(args.certificate).read_text())
        print(f"{'OK' if ok else 'INVALID'}: {kind} {value}")
        return EXIT_OK if ok else EXIT_FAIL
    if args.what == "mycielski-lemma":
        report = check_mycielski_lemma(read_dimacs(args.graph), budget)
    elif args.what == "block":
        X = build_block(BlockSpec(args.r, args.m, args.provider), budget)
        report = check_block_observation(X, budget, args.exact_limit)
    elif args.what == "goodness":
        specs = [BlockSpec(args.r, m, args.provider) for m in parse_m_range(args.m)]
        good = check_goodness(specs, args.strategy, budget, args.limit, args.seed, jobs)
        _emit(good.to_dict(include_samples=args.samples), args)
        return STATUS_EXIT[good.status]
    elif args.what == "nonpoly":
        _, report = find_nonpoly_witness(args.r, Polynomial.parse(args.poly), args.provider,
                                         budget, args.exact_limit)
    elif args.what == "pollyanna":
        table = BoundingTable.parse(args.phi)
        if args.r is None:
            R, M = pollyanna_bound(table)
            _emit({"check": "pollyanna-bound", "inputs": {"table": list(table.values)},
                   "values": {"R": R, "M": M}, "status": "pass"}, args)
            return EXIT_OK
        specs = [BlockSpec(args.r, m) for m in parse_m_range(args.m)]
        report = check_pollyanna_implication(table, specs, args.strategy, args.limit, args.seed, budget)
    else:
        poly = Polynomial.parse(args.poly) if args.poly else None
        summary = verify_all(_slice_from_args(args), poly, budget, args.strategy, args.limit,
                             args.seed, jobs, args.exact_limit)
        _emit(summary.to_dict(), args)
        return STATUS_EXIT[summary.status]
    _emit(report.to_dict(), args)
    return STATUS_EXIT[report.status]


def _cmd_oracle(args: argparse.Namespace) -> int:
    G = read_dimacs(args.graph)
    value = brute_force_chi(G) if args.what == "chi" else brute_force_omega(G)
    print(f"{args.what} {value}")
    return EXIT_OK


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    budget = args.budget if args.budget is not None else default_budget()
    jobs = 1 if args.deterministic else (args.jobs or os.cpu_count() or 1)
    log.debug("budget=%s jobs=%s seed=%s", budget, jobs, args.seed)
    try:
        if args.command == "gen":
            return _cmd_gen(args, budget)
        if args.command == "solve":
            return _cmd_solve(args, budget)
        if args.command == "verify":
            return _cmd_verify(args, budget, jobs)
        return _cmd_oracle(args)
    except ClaimMismatch as exc:
        print(f"claim mismatch: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except SolverTimeout as exc:
        print(f"timeout: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT
    except (ChiboundError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
