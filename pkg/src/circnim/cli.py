"""Command-line interface: solve, classify, verify, strategy, coverage,
circuits, explore, serve.

Exit codes: 0 success, 1 domain error (unsupported game, bad position,
resource limits), 2 usage error.  Every command takes --json for
machine-readable output.  CNIM_CACHE_DIR provides the default table
cache directory.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional

from circnim.core import (
    CircularNimError,
    GameSpec,
    canonicalize,
    format_move,
    format_position,
    parse_position,
)
from circnim.coverage import coverage_report
from circnim.circuits import (
    circuit_size_range,
    circuit_sizes,
    construct_circuit,
    enumerate_circuits,
)
from circnim.losing_sets import is_characterized, membership
from circnim.solver import (
    DEFAULT_BUDGET,
    Outcome,
    cached_table,
    default_height,
    find_conjecture_counterexample,
    outcome,
)
from circnim.strategy import MAIN_LEMMAS, NotApplicable, winning_move
from circnim.verification import verify_game


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except CircularNimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circnim", description="Circular Nim CN(n,k) toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a game exhaustively up to a height")
    _spec_flags(p)
    p.add_argument("--max-height", type=int, default=None)
    _common_flags(p)
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("classify", help="theorem and solver verdicts for a position")
    _spec_flags(p)
    p.add_argument("--pos", required=True, type=_position_arg)
    p.add_argument("--max-height", type=int, default=None)
    _common_flags(p)
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("verify", help="exhaustive theorem-vs-solver verification")
    _spec_flags(p)
    p.add_argument("--max-height", type=int, required=True)
    _common_flags(p)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("strategy", help="print a winning move for a position")
    _spec_flags(p)
    p.add_argument("--pos", required=True, type=_position_arg)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_strategy)

    p = sub.add_parser("coverage", help="the 2520-arrangement lemma coverage report")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out-dir", type=Path, default=None,
                   help="also write coverage.csv and coverage.png here")
    p.set_defaults(handler=cmd_coverage)

    p = sub.add_parser("circuits", help="circuit analysis of the playing complex")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--enumerate", action="store_true")
    mode.add_argument("--range", action="store_true")
    mode.add_argument("--construct", type=int, metavar="ELL")
    mode.add_argument("--table", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out-dir", type=Path, default=None,
                   help="with --table, also write circuit_sizes.csv/.png here")
    p.set_defaults(handler=cmd_circuits)

    p = sub.add_parser("explore", help="dump losing sets of open games, hunt conjectures")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--conjecture", choices=["2m-m"], default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--max-height", type=int, default=None)
    _common_flags(p)
    p.add_argument("--out-dir", type=Path, default=None,
                   help="also write the losing-position CSV and figure here")
    p.set_defaults(handler=cmd_explore)

    p = sub.add_parser("serve", help="run the HTTP play service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--snapshot", type=Path, default=None,
                   help="load sessions from / save sessions to this file")
    p.set_defaults(handler=cmd_serve)

    return parser


def _spec_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)


def _common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true")
    p.add_argument("--cache-dir", type=Path,
                   default=os.environ.get("CNIM_CACHE_DIR") or None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="maximum number of positions a solve may allocate")


def _position_arg(text: str) -> tuple[int, ...]:
    try:
        return parse_position(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _make_spec(args: argparse.Namespace) -> GameSpec:
    try:
        return GameSpec(args.n, args.k)
    except ValueError as exc:
        raise CircularNimError(str(exc))


def _emit(args: argparse.Namespace, payload: dict, lines: list[str]) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        for line in lines:
            print(line)


def cmd_solve(args: argparse.Namespace) -> int:
    spec = _make_spec(args)
    H = args.max_height if args.max_height is not None else default_height(spec, args.budget)
    table, hit = cached_table(spec, H, args.cache_dir, workers=args.workers,
                              budget=args.budget)
    payload = {
        "n": spec.n, "k": spec.k, "max_height": H,
        "positions": int(table.grid.size),
        "loss_count": table.loss_count(),
        "cache": "hit" if hit else ("stored" if args.cache_dir else "off"),
    }
    _emit(args, payload, [
        f"{spec} solved up to height {H}: {payload['positions']} positions, "
        f"{payload['loss_count']} losing (cache {payload['cache']})",
    ])
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    spec = _make_spec(args)
    pos = spec.validate_position(args.pos)
    theorem: Optional[str] = None
    if is_characterized(spec):
        theorem = Outcome.LOSS.value if membership(spec, pos) else Outcome.WIN.value

    solver: Optional[str] = None
    H = args.max_height if args.max_height is not None else max(pos, default=0)
    if (H + 1) ** spec.n <= args.budget and all(h <= H for h in pos):
        table, _ = cached_table(spec, H, args.cache_dir, workers=args.workers,
                                budget=args.budget)
        solver = outcome(table, pos).value

    disagreement = theorem is not None and solver is not None and theorem != solver
    lines = []
    lines.append(f"theorem: {theorem}" if theorem else "theorem: (uncharacterized game)")
    lines.append(f"solver: {solver}" if solver else "solver: (out of range)")
    if disagreement:
        lines.append("DISAGREEMENT between theorem and solver")
    _emit(args, {
        "n": spec.n, "k": spec.k, "position": list(pos),
        "theorem": theorem, "solver": solver, "disagreement": disagreement,
    }, lines)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    spec = _make_spec(args)
    report = verify_game(spec, args.max_height, workers=args.workers,
                         budget=args.budget)
    payload = {
        "n": spec.n, "k": spec.k, "max_height": report.H,
        "positions": report.positions,
        "loss_solver": report.loss_solver,
        "loss_membership": report.loss_membership,
        "mismatches": report.mismatches,
        "condition_i_violations": report.condition_i_violations,
        "condition_ii_failures": report.condition_ii_failures,
        "fallback_count": report.fallback_count,
        "seconds": round(report.seconds, 3),
        "passed": report.passed,
    }
    lines = [
        f"{spec} up to height {report.H}: {report.positions} positions",
        f"  oracle equivalence: {report.mismatches} mismatches",
        f"  condition (I): {report.condition_i_violations} violations",
        f"  condition (II): {report.condition_ii_failures} failures "
        f"(fallback used {report.fallback_count} times)",
        "PASS" if report.passed else "FAIL",
    ]
    _emit(args, payload, lines)
    return 0 if report.passed else 1


def cmd_strategy(args: argparse.Namespace) -> int:
    spec = _make_spec(args)
    pos = spec.validate_position(args.pos)
    try:
        move = winning_move(spec, pos)
    except NotApplicable:
        _emit(args, {"n": spec.n, "k": spec.k, "position": list(pos), "losing": True},
              ["losing position"])
        return 0
    from circnim.core import apply_move

    target = apply_move(spec, pos, move)
    _emit(args, {
        "n": spec.n, "k": spec.k, "position": list(pos), "losing": False,
        "move": {"start": move.start, "removals": list(move.removals)},
        "target": list(target),
    }, [format_move(move), f"-> {format_position(target)}"])
    return 0


def cmd_coverage(args: argparse.Namespace) -> int:
    report = coverage_report()
    lines = [f"arrangements {report.total}"]
    for tag in MAIN_LEMMAS:
        lines.append(f"{tag.name} {report.count(tag)}")
    lines.append(f"only-CLEANUP {report.only_cleanup}")
    lines.append(f"uncovered {len(report.uncovered)}")
    lines.append("regions:")
    for key in sorted(report.region_counts):
        lines.append(f"  {key} {report.region_counts[key]}")
    payload = {
        "total": report.total,
        "lemmas": dict(report.lemma_counts),
        "only_cleanup": report.only_cleanup,
        "regions": dict(sorted(report.region_counts.items())),
        "uncovered": [list(a) for a in report.uncovered],
    }
    if args.out_dir is not None:
        from circnim.report import write_coverage_report

        paths = write_coverage_report(report, args.out_dir)
        lines.append("wrote " + ", ".join(str(p) for p in paths))
        payload["files"] = [str(p) for p in paths]
    _emit(args, payload, lines)
    return 0


def cmd_circuits(args: argparse.Namespace) -> int:
    if args.table:
        cells = {}
        for n in list(range(3, 11)) + [15]:
            for k in range(2, min(n, 11)):
                cells[(n, k)] = circuit_sizes(GameSpec(n, k))
        lines = ["circuit sizes (rows n=3..10,15; columns k=2..10):"]
        for n in list(range(3, 11)) + [15]:
            row = [f"n={n}:"]
            for k in range(2, min(n, 11)):
                sizes = sorted(cells[(n, k)])
                row.append(f"k={k}:" + (str(sizes[0]) if len(sizes) == 1 else
                                        "{" + ",".join(map(str, sizes)) + "}"))
            lines.append("  " + " ".join(row))
        payload = {"cells": {f"{n},{k}": sorted(v) for (n, k), v in sorted(cells.items())}}
        if args.out_dir is not None:
            from circnim.report import write_circuit_table

            paths = write_circuit_table(cells, args.out_dir)
            lines.append("wrote " + ", ".join(str(p) for p in paths))
            payload["files"] = [str(p) for p in paths]
        _emit(args, payload, lines)
        return 0

    if args.n is None or args.k is None:
        raise CircularNimError("--n and --k are required unless --table is used")
    spec = _make_spec(args)
    if args.range:
        rng = circuit_size_range(spec)
        _emit(args, {"n": spec.n, "k": spec.k, "lower": rng.lower, "upper": rng.upper},
              [f"{rng.lower}..{rng.upper}"])
        return 0
    if args.construct is not None:
        V = construct_circuit(spec, args.construct)
        _emit(args, {"n": spec.n, "k": spec.k, "ell": args.construct,
                     "vertices": list(V.vertices)},
              ["{" + ",".join(map(str, V.vertices)) + "}"])
        return 0
    circuits = enumerate_circuits(spec)
    lines = [f"{len(circuits)} circuits"]
    lines += ["{" + ",".join(map(str, V.vertices)) + "}" for V in circuits]
    _emit(args, {"n": spec.n, "k": spec.k, "count": len(circuits),
                 "circuits": [list(V.vertices) for V in circuits]}, lines)
    return 0


def cmd_explore(args: argparse.Namespace) -> int:
    if args.conjecture == "2m-m":
        if args.m is None:
            raise CircularNimError("--conjecture 2m-m needs --m")
        found = None
        height = None
        max_h = args.max_height if args.max_height is not None else 4
        for H in range(1, max_h + 1):
            found = find_conjecture_counterexample(args.m, H, budget=args.budget)
            if found is not None:
                height = H
                break
        if found is None:
            _emit(args, {"m": args.m, "max_height": max_h, "counterexample": None},
                  [f"no counterexample for CN({2*args.m},{args.m}) up to height {max_h}"])
        else:
            _emit(args, {"m": args.m, "height": height,
                         "counterexample": list(found)},
                  [f"counterexample at height {height}: {format_position(found)}"])
        return 0

    if args.n is None or args.k is None:
        raise CircularNimError("explore needs --n/--k or --conjecture")
    spec = _make_spec(args)
    H = args.max_height if args.max_height is not None else default_height(spec, args.budget)
    table, _ = cached_table(spec, H, args.cache_dir, workers=args.workers,
                            budget=args.budget)
    canon = sorted(
        {canonicalize(p)[0] for p in table.loss_positions()},
        key=lambda p: (sum(p), p),
    )
    with_zero = sum(1 for p in canon if 0 in p)
    lines = [f"{spec} losing positions up to height {H}: {len(canon)} canonical forms"]
    lines += [format_position(p) for p in canon]
    lines.append(f"with an empty stack: {with_zero}/{len(canon)}")
    payload = {
        "n": spec.n, "k": spec.k, "max_height": H,
        "count": len(canon),
        "positions": [list(p) for p in canon],
        "with_empty_stack": with_zero,
    }
    if args.out_dir is not None:
        from circnim.report import write_losing_positions

        paths = write_losing_positions(spec, H, canon, args.out_dir)
        lines.append("wrote " + ", ".join(str(p) for p in paths))
        payload["files"] = [str(p) for p in paths]
    _emit(args, payload, lines)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from circnim.service import create_app

    app = create_app(snapshot_path=args.snapshot)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


if __name__ == "__main__":
    sys.exit(main())
