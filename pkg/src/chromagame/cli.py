"""Command-line front end.

Subcommands: solve, formula, bounds, simulate, play, verify, scan,
conjecture. Exit codes: 0 = success or pass, 1 = a verification failed or a
counterexample was found (it is printed), 2 = usage error. The CHROMA_CACHE
environment variable names an optional win-vector cache file used by solve
and scan.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from .core import (
    ALICE,
    BOB,
    GameState,
    GameStatus,
    Move,
    Partition,
    apply_move,
    fixing_move_played,
    initial_state,
    status,
)
from .formulas import bounds, table1_chi_g, table1_report
from .harness import (
    GameRecord,
    check_b1p_conjecture,
    check_nonoptimality_theorem,
    record_playout,
    scan,
    scan_csv,
    simulate,
    verify_guarantee,
)
from .solver import (
    DETERMINISTIC,
    UNIVERSAL,
    WinVector,
    cached_win_vector,
    load_cache,
    save_cache,
)
from .strategies import (
    HumanPlayer,
    InapplicableStrategyError,
    Strategy,
    StrategyContext,
    get_strategy,
)

CACHE_ENV = "CHROMA_CACHE"


class UsageError(Exception):
    pass


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _strategy(name: str) -> Strategy:
    try:
        return get_strategy(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load_cache_checked(path: str):
    try:
        return load_cache(path)
    except ValueError as exc:
        raise UsageError(f"bad cache file {path}: {exc}") from None


def _emit(out, text: str) -> None:
    print(text, file=out)


def _solve_payload(partition: Partition, cache) -> dict:
    vec = cached_win_vector(partition, cache)
    return {
        "partition": list(partition.sizes),
        "chi_g": vec.chi_g,
        "win_vector": [
            {"t": t, "alice_wins": vec.alice_wins(t)}
            for t in range(partition.k, partition.n + 1)
        ],
        "table1": table1_chi_g(partition),
        "bounds": [r.to_dict() for r in bounds(partition)],
        "monotone": vec.monotone,
    }


def cmd_solve(args, out) -> int:
    partition = _partition(args.partition)
    cache_path = os.environ.get(CACHE_ENV)
    cache = _load_cache_checked(cache_path) if cache_path else None
    payload = _solve_payload(partition, cache)
    if cache_path and cache is not None:
        save_cache(cache_path, cache)
    if args.format == "json":
        _emit(out, json.dumps(payload))
        return 0
    _emit(out, f"chi_g({partition.label()}) = {payload['chi_g']}")
    bits = "".join("1" if row["alice_wins"] else "0" for row in payload["win_vector"])
    _emit(out, f"win vector (t = {partition.k}..{partition.n}): {bits}")
    if payload["table1"] is not None:
        agrees = "agrees" if payload["table1"] == payload["chi_g"] else "DISAGREES"
        _emit(out, f"table formula: {payload['table1']} ({agrees})")
    else:
        _emit(out, "table formula: not applicable (singleton present with k >= 3)")
    if not payload["monotone"]:
        _emit(out, "WARNING: win vector is not monotone in t")
    return 0


def cmd_formula(args, out) -> int:
    partition = _partition(args.partition)
    report = table1_report(partition)
    if args.format == "json":
        _emit(out, json.dumps({"partition": list(partition.sizes), **report.to_dict()}))
        return 0
    if report.applicable:
        _emit(out, f"table chi_g({partition.label()}) = {report.value}")
    else:
        _emit(out, f"not applicable for {partition.label()}: {report.reason}")
    return 0


def cmd_bounds(args, out) -> int:
    partition = _partition(args.partition)
    reports = bounds(partition)
    if args.format == "json":
        _emit(
            out,
            json.dumps(
                {
                    "partition": list(partition.sizes),
                    "bounds": [r.to_dict() for r in reports],
                }
            ),
        )
        return 0
    _emit(out, f"bounds for {partition.label()}:")
    for r in reports:
        if r.applicable:
            _emit(out, f"  {r.source:12s} {r.kind:5s} {r.value}")
        else:
            _emit(out, f"  {r.source:12s} -     not applicable: {r.reason}")
    return 0


def _render_record(record: GameRecord, out) -> None:
    _emit(out, f"{record.partition.label()} with {record.budget} colors: "
               f"{record.alice} (Alice) vs {record.bob} (Bob)")
    for m in record.moves:
        fixing = "   <- fixing move" if m.index == record.fixing_index else ""
        _emit(
            out,
            f"  {m.index + 1:2d}. {m.mover:5s} part {m.part} "
            f"color {m.color} ({'fresh' if m.fresh else 'reuse'}){fixing}",
        )
    _emit(out, f"outcome: {record.outcome} using {record.colors_used} colors")


def cmd_simulate(args, out) -> int:
    partition = _partition(args.partition)
    alice = _strategy(args.alice)
    bob = _strategy(args.bob)
    try:
        record = simulate(partition, args.colors, alice, bob, seed=args.seed)
    except InapplicableStrategyError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        _emit(out, json.dumps(record.to_dict()))
    else:
        _render_record(record, out)
    return 0


def _render_board(state: GameState, part_colors: list[list[int]], out) -> None:
    for i, p in enumerate(state.parts):
        colors = ",".join(str(c) for c in sorted(part_colors[i])) or "-"
        starter = f" started by {p.starter}" if p.starter else ""
        _emit(out, f"  part {i}: {p.colored}/{p.size} colored, colors [{colors}]{starter}")
    _emit(out, f"  colors used {state.used}/{state.budget}")


def _prompt_move(state: GameState, moves: list[Move], inp, out) -> Move:
    while True:
        _emit(out, "legal moves:")
        for i, m in enumerate(moves):
            _emit(out, f"  [{i}] part {m.part} {m.action}")
        _emit(out, f"{state.turn} to move; enter a move index:")
        line = inp.readline()
        if line == "":
            raise EOFError
        choice = line.strip()
        if choice.isdigit() and int(choice) < len(moves):
            return moves[int(choice)]
        _emit(out, f"invalid input {choice!r}; try again")


def cmd_play(args, out, inp) -> int:
    partition = _partition(args.partition)
    alice = _strategy(args.alice)
    bob = _strategy(args.bob)
    for side, seat in ((ALICE, alice), (BOB, bob)):
        if isinstance(seat, HumanPlayer):
            seat.picker = lambda state, moves: _prompt_move(state, moves, inp, out)
        if not seat.is_applicable(partition):
            raise UsageError(f"{seat.id} is not applicable to {partition.label()}")
        if seat.side is not None and seat.side != side:
            raise UsageError(f"{seat.id} is a rule for {seat.side}; it cannot play as {side}")
    state = initial_state(partition, args.colors)
    ctx_a = StrategyContext.initial(alice, state)
    ctx_b = StrategyContext.initial(bob, state)
    part_colors: list[list[int]] = [[] for _ in partition.sizes]
    next_color = 1
    moves: list[Move] = []
    _emit(out, f"{partition.label()} with {args.colors} colors")
    try:
        while status(state) is GameStatus.ONGOING:
            _render_board(state, part_colors, out)
            owner = alice if state.turn == ALICE else bob
            ctx = ctx_a if state.turn == ALICE else ctx_b
            move = owner.choose(ctx.aux, state)
            if move.fresh:
                color = next_color
                next_color += 1
                part_colors[move.part].append(color)
            else:
                color = min(part_colors[move.part])
            _emit(
                out,
                f"{state.turn} plays part {move.part} with color {color} ({move.action})",
            )
            moves.append(move)
            was_fixed = fixing_move_played(state)
            nxt = apply_move(state, move)
            ctx_a = ctx_a.advanced(alice, nxt, move)
            ctx_b = ctx_b.advanced(bob, nxt, move)
            state = nxt
            if not was_fixed and fixing_move_played(state):
                _emit(out, ">>> fixing move: every part is now started <<<")
        record = record_playout(partition, args.colors, moves, alice.id, bob.id)
        _render_board(state, part_colors, out)
        if record.fixing_index is not None:
            _emit(out, f"fixing move was move {record.fixing_index + 1}")
        _emit(out, f"outcome: {record.outcome} using {record.colors_used} colors")
        return 0
    except EOFError:
        _emit(out, "aborted (end of input)")
        return 2


def cmd_verify(args, out) -> int:
    partition = _partition(args.partition)
    strategy = _strategy(args.strategy)
    mode = UNIVERSAL if args.universal else DETERMINISTIC
    try:
        result = verify_guarantee(partition, args.colors, args.side, strategy, mode)
    except (InapplicableStrategyError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if result.passed:
        _emit(
            out,
            f"PASS: {args.side} playing {strategy.id} meets its goal on "
            f"{partition.label()} with {args.colors} colors ({mode})",
        )
        return 0
    _emit(
        out,
        f"FAIL: {args.side} playing {strategy.id} does not meet its goal on "
        f"{partition.label()} with {args.colors} colors ({mode}); counterexample:",
    )
    _render_record(result.counterexample, out)
    return 1


def cmd_scan(args, out) -> int:
    cache_path = os.environ.get(CACHE_ENV)
    rows = scan(args.max_n, args.filter, jobs=args.jobs)
    if cache_path:
        cache = _load_cache_checked(cache_path)
        for row in rows:
            key = str(row.partition)
            if key not in cache:
                cache[key] = WinVector(
                    row.partition,
                    tuple([False] * (row.k - 1) + [b == "1" for b in row.winvector]),
                )
        save_cache(cache_path, cache)
    csv_text = scan_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
        _emit(out, f"wrote {len(rows)} rows to {args.out}")
    else:
        _emit(out, csv_text.rstrip("\n"))
    disagreements = [r for r in rows if r.table1 is not None and not r.agrees]
    anomalies = [r for r in rows if not r.monotone]
    if disagreements or anomalies:
        for r in disagreements:
            _emit(out, f"DISAGREEMENT: {r.partition.label()} solver {r.chi_g} table {r.table1}")
        for r in anomalies:
            _emit(out, f"NON-MONOTONE: {r.partition.label()} win vector {r.winvector}")
        return 1
    return 0


def cmd_conjecture(args, out) -> int:
    if args.which == "b1p":
        mode = UNIVERSAL if args.universal else DETERMINISTIC
        report = check_b1p_conjecture(args.max_n, mode)
        _emit(
            out,
            f"b1p optimality check up to n = {report.max_n} ({report.mode}): "
            f"{report.partitions_checked} partitions, {report.cases_checked} cases, "
            f"{len(report.violations)} violations",
        )
        for v in report.violations:
            _emit(out, f"counterexample on {v.partition.label()} with {v.budget} colors:")
            _render_record(v.counterexample, out)
        return 0 if report.passed else 1
    # nonopt
    if args.k is None:
        raise UsageError("conjecture nonopt requires --k")
    try:
        report = check_nonoptimality_theorem(args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(out, f"non-optimality check on {report.partition.label()} at {report.budget} colors:")
    _emit(out, f"  optimal play wins: {report.solver_upper_ok}")
    _emit(out, f"  acomposite wins:   {report.composite_ok}")
    for rule, won in report.rule_results.items():
        verdict = "wins (unexpected!)" if won else "loses (as required)"
        _emit(out, f"  {rule:4s} {verdict}")
    _emit(out, "PASS" if report.passed else "FAIL")
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chromagame",
        description="Exact solver and strategy harness for the coloring game "
        "on complete multipartite graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("human", "json"), default="human")

    p = sub.add_parser("solve", help="exact game chromatic number and win vector")
    p.add_argument("partition")
    add_format(p)

    p = sub.add_parser("formula", help="closed-form table value")
    p.add_argument("partition")
    add_format(p)

    p = sub.add_parser("bounds", help="all bounds with applicability")
    p.add_argument("partition")
    add_format(p)

    p = sub.add_parser("simulate", help="play two strategies against each other")
    p.add_argument("partition")
    p.add_argument("--colors", type=int, required=True)
    p.add_argument("--alice", required=True)
    p.add_argument("--bob", required=True)
    p.add_argument("--seed", type=int, default=0)
    add_format(p)

    p = sub.add_parser("play", help="interactive game (use strategy 'human')")
    p.add_argument("partition")
    p.add_argument("--colors", type=int, required=True)
    p.add_argument("--alice", required=True)
    p.add_argument("--bob", required=True)

    p = sub.add_parser("verify", help="verify a strategy guarantee")
    p.add_argument("partition")
    p.add_argument("--colors", type=int, required=True)
    p.add_argument("--side", choices=(ALICE, BOB), required=True)
    p.add_argument("--strategy", required=True)
    p.add_argument("--universal", action="store_true")

    p = sub.add_parser("scan", help="solve all shapes up to a vertex count")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument(
        "--filter",
        choices=("all", "no-singletons", "with-singletons"),
        default="all",
    )
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("conjecture", help="run a conjecture check")
    p.add_argument("which", choices=("b1p", "nonopt"))
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--k", type=int)
    p.add_argument("--universal", action="store_true")

    return parser


def run(argv: Optional[list[str]] = None, out=None, inp=None) -> int:
    """Programmatic entry point; returns the exit code."""
    out = out if out is not None else sys.stdout
    inp = inp if inp is not None else sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.command == "solve":
            return cmd_solve(args, out)
        if args.command == "formula":
            return cmd_formula(args, out)
        if args.command == "bounds":
            return cmd_bounds(args, out)
        if args.command == "simulate":
            return cmd_simulate(args, out)
        if args.command == "play":
            return cmd_play(args, out, inp)
        if args.command == "verify":
            return cmd_verify(args, out)
        if args.command == "scan":
            return cmd_scan(args, out)
        if args.command == "conjecture":
            return cmd_conjecture(args, out)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
