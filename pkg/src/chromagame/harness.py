"""Reproduction engine: simulations with full transcripts, guarantee
verification with counterexamples, exhaustive small-shape scans against the
closed-form table, and the two conjecture checks."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .core import (
    ALICE,
    BOB,
    GameStatus,
    Move,
    Partition,
    apply_move,
    fixing_move_played,
    initial_state,
    status,
)
from .formulas import table1_chi_g
from .solver import (
    DETERMINISTIC,
    cached_win_vector,
    refute_restricted,
    restricted_value,
)
from .strategies import (
    InapplicableStrategyError,
    RandomMover,
    Strategy,
    StrategyContext,
    get_strategy,
)


# ---------------------------------------------------------------------------
# transcripts


@dataclass(frozen=True)
class MoveRecord:
    index: int
    mover: str
    part: int
    color: int
    fresh: bool

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "mover": self.mover,
            "part": self.part,
            "color": self.color,
            "fresh": self.fresh,
        }


@dataclass(frozen=True)
class GameRecord:
    """Full transcript of one play-through.

    Concrete colors follow the bookkeeping convention: a fresh color takes
    the next unused integer (1, 2, ...) and a reuse takes the smallest color
    already present in the part.
    """

    partition: Partition
    budget: int
    alice: str
    bob: str
    moves: tuple[MoveRecord, ...]
    outcome: str
    fixing_index: Optional[int]
    colors_used: int

    def to_dict(self) -> dict:
        return {
            "partition": list(self.partition.sizes),
            "budget": self.budget,
            "alice": self.alice,
            "bob": self.bob,
            "moves": [m.to_dict() for m in self.moves],
            "outcome": self.outcome,
            "fixing_index": self.fixing_index,
            "colors_used": self.colors_used,
        }

    def move_list(self) -> list[Move]:
        return [Move(m.part, m.fresh) for m in self.moves]


def record_playout(
    partition: Partition,
    budget: int,
    moves: Iterable[Move],
    alice_id: str,
    bob_id: str,
) -> GameRecord:
    """Replay count-level moves, assigning concrete colors for the record."""
    state = initial_state(partition, budget)
    part_colors: list[list[int]] = [[] for _ in partition.sizes]
    next_color = 1
    records: list[MoveRecord] = []
    fixing_index: Optional[int] = None
    for i, move in enumerate(moves):
        mover = state.turn
        state = apply_move(state, move)  # validates before color bookkeeping
        if move.fresh:
            color = next_color
            next_color += 1
            part_colors[move.part].append(color)
        else:
            color = min(part_colors[move.part])
        records.append(MoveRecord(i, mover, move.part, color, move.fresh))
        if fixing_index is None and fixing_move_played(state):
            fixing_index = i
    return GameRecord(
        partition=partition,
        budget=budget,
        alice=alice_id,
        bob=bob_id,
        moves=tuple(records),
        outcome=status(state).value,
        fixing_index=fixing_index,
        colors_used=state.used,
    )


def simulate(
    partition: Partition,
    budget: int,
    alice: Strategy | str,
    bob: Strategy | str,
    seed: int = 0,
) -> GameRecord:
    """Deterministic playout of the two rules against each other."""
    alice = get_strategy(alice) if isinstance(alice, str) else alice
    bob = get_strategy(bob) if isinstance(bob, str) else bob
    if isinstance(alice, RandomMover):
        alice = alice.with_seed(seed)
    if isinstance(bob, RandomMover):
        bob = bob.with_seed(seed + 1)
    for seat, strat in ((ALICE, alice), (BOB, bob)):
        if not strat.is_applicable(partition):
            raise InapplicableStrategyError(
                f"{strat.id} is not applicable to {partition.label()}"
            )
        if strat.side is not None and strat.side != seat:
            raise InapplicableStrategyError(
                f"{strat.id} is a rule for {strat.side}; it cannot play as {seat}"
            )
    state = initial_state(partition, budget)
    ctx_a = StrategyContext.initial(alice, state)
    ctx_b = StrategyContext.initial(bob, state)
    moves: list[Move] = []
    while status(state) is GameStatus.ONGOING:
        owner = alice if state.turn == ALICE else bob
        ctx = ctx_a if state.turn == ALICE else ctx_b
        move = owner.choose(ctx.aux, state)
        moves.append(move)
        nxt = apply_move(state, move)
        ctx_a = ctx_a.advanced(alice, nxt, move)
        ctx_b = ctx_b.advanced(bob, nxt, move)
        state = nxt
    return record_playout(partition, budget, moves, alice.id, bob.id)


# ---------------------------------------------------------------------------
# guarantee verification


@dataclass(frozen=True)
class VerifyResult:
    partition: Partition
    budget: int
    side: str
    strategy: str
    mode: str
    passed: bool
    counterexample: Optional[GameRecord]


def verify_guarantee(
    partition: Partition,
    budget: int,
    side: str,
    strategy: Strategy | str,
    mode: str = DETERMINISTIC,
) -> VerifyResult:
    """Check that `side` pinned to `strategy` meets its goal at this budget;
    on failure, attach the first refuting line as a replayable transcript."""
    strat = get_strategy(strategy) if isinstance(strategy, str) else strategy
    line = refute_restricted(partition, budget, side, strat, mode)
    counterexample = None
    if line is not None:
        ids = {ALICE: "search", BOB: "search"}
        ids[side] = strat.id
        counterexample = record_playout(partition, budget, line, ids[ALICE], ids[BOB])
    return VerifyResult(
        partition=partition,
        budget=budget,
        side=side,
        strategy=strat.id,
        mode=mode,
        passed=line is None,
        counterexample=counterexample,
    )


# ---------------------------------------------------------------------------
# partition enumeration and scanning


def partitions_of(n: int, largest: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """All non-increasing positive partitions of n."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest


def all_partitions(max_n: int, filter_: str = "all") -> list[Partition]:
    """Every partition with n <= max_n, in canonical scan order."""
    out = []
    for n in range(1, max_n + 1):
        for sizes in partitions_of(n):
            if filter_ == "no-singletons" and sizes[-1] == 1:
                continue
            if filter_ == "with-singletons" and sizes[-1] != 1:
                continue
            out.append(Partition(sizes))
    return out


@dataclass(frozen=True)
class ScanRow:
    partition: Partition
    n: int
    k: int
    chi_g: int
    table1: Optional[int]
    agrees: bool  # true iff the table applies and matches the solver
    monotone: bool
    winvector: str
    ms: float

    def to_csv(self) -> str:
        table = "na" if self.table1 is None else str(self.table1)
        return (
            f"{self.partition},{self.n},{self.k},{self.chi_g},{table},"
            f"{str(self.agrees).lower()},{str(self.monotone).lower()},"
            f"{self.winvector},{self.ms:.1f}"
        )


SCAN_CSV_HEADER = "partition,n,k,chi_g,table1,agrees,monotone,winvector,ms"


def scan_one(sizes: tuple[int, ...]) -> ScanRow:
    partition = Partition(sizes)
    start = time.perf_counter()
    vec = cached_win_vector(partition, None)
    ms = (time.perf_counter() - start) * 1000.0
    table = table1_chi_g(partition)
    return ScanRow(
        partition=partition,
        n=partition.n,
        k=partition.k,
        chi_g=vec.chi_g,
        table1=table,
        agrees=table is not None and table == vec.chi_g,
        monotone=vec.monotone,
        winvector=vec.bitstring(),
        ms=ms,
    )


def scan(max_n: int, filter_: str = "all", jobs: int = 1) -> list[ScanRow]:
    """Solve every shape up to max_n vertices and compare with the table.

    Rows come back canonically sorted, so the output is identical for any
    worker count (the ms timing column aside).
    """
    parts = [p.sizes for p in all_partitions(max_n, filter_)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(scan_one, parts, chunksize=4))
    else:
        rows = [scan_one(sizes) for sizes in parts]
    rows.sort(key=lambda r: (r.n, r.partition.sizes))
    return rows


def scan_csv(rows: list[ScanRow]) -> str:
    return "\n".join([SCAN_CSV_HEADER] + [r.to_csv() for r in rows]) + "\n"


# ---------------------------------------------------------------------------
# guarantee suites over all small shapes


@dataclass(frozen=True)
class SuiteCase:
    label: str
    partition: Partition
    budget: int
    side: str
    strategy: str
    passed: bool
    counterexample: Optional[GameRecord] = field(default=None, compare=False)


def guarantee_suite(max_n: int, mode: str = DETERMINISTIC) -> list[SuiteCase]:
    """Run every guarantee that applies to every shape with r_k >= 2 and
    n <= max_n, at the budget each guarantee names."""
    cases: list[SuiteCase] = []

    def run(label, partition, budget, side, strategy):
        if budget < 1 or budget > partition.n:
            return
        res = verify_guarantee(partition, budget, side, strategy, mode)
        cases.append(
            SuiteCase(
                label, partition, budget, side, strategy, res.passed, res.counterexample
            )
        )

    for partition in all_partitions(max_n, "no-singletons"):
        k = partition.k
        n = partition.n
        sizes = partition.sizes
        cap = sum((r + 1) // 2 for r in sizes)
        has_triple = 3 in sizes

        run("alice_fresh_starter", partition, 2 * k - 1, ALICE, "a1")
        if k >= 3 and has_triple:
            run("alice_triple_anchor", partition, 2 * k - 2, ALICE, "a2")
        if n % 2 == 1:
            run("alice_odd_opener", partition, cap, ALICE, "a3")
        if sizes[-1] >= 4:
            run("bob_echo_large_parts", partition, 2 * k - 2, BOB, "b1")
        if k >= 3 and not has_triple:
            run("bob_echo_no_triples", partition, min(2 * k - 2, cap - 1), BOB, "b1")
            if n % 2 == 0:
                run("bob_echo_no_triples_even", partition, 2 * k - 2, BOB, "b1")
        if k >= 3 and has_triple:
            run("bob_echo_with_triple", partition, min(2 * k - 3, cap - 1), BOB, "b1")
            if n % 2 == 0:
                run("bob_echo_with_triple_even", partition, 2 * k - 3, BOB, "b1")
    return cases


# ---------------------------------------------------------------------------
# conjecture checks


@dataclass(frozen=True)
class ConjectureViolation:
    partition: Partition
    budget: int
    counterexample: GameRecord


@dataclass(frozen=True)
class ConjectureReport:
    max_n: int
    mode: str
    partitions_checked: int
    cases_checked: int
    violations: tuple[ConjectureViolation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


def check_b1p_conjecture(max_n: int, mode: str = DETERMINISTIC) -> ConjectureReport:
    """Whenever optimal play wins for Bob (budget below the exact value),
    the singleton-aware echo rule must still win for him."""
    violations: list[ConjectureViolation] = []
    cases = 0
    partitions = all_partitions(max_n)
    for partition in partitions:
        chi = cached_win_vector(partition, None).chi_g
        for budget in range(1, chi):
            cases += 1
            line = refute_restricted(partition, budget, BOB, "b1p", mode)
            if line is not None:
                record = record_playout(partition, budget, line, "search", "b1p")
                violations.append(ConjectureViolation(partition, budget, record))
    return ConjectureReport(
        max_n=max_n,
        mode=mode,
        partitions_checked=len(partitions),
        cases_checked=cases,
        violations=tuple(violations),
    )


NONOPT_ALICE_RULES = ("a1", "a1p", "a2", "a2p", "a3", "a3p")


@dataclass(frozen=True)
class NonOptimalityReport:
    """Outcome of the composite-vs-simple-rules check on K_{4,3,...,3,1,1}."""

    k: int
    partition: Partition
    budget: int  # 2k - 4
    solver_upper_ok: bool  # Alice wins outright at this budget
    composite_ok: bool  # the scripted opening also wins at this budget
    failing_rules: tuple[str, ...]  # simple rules that lose here (all should)
    rule_results: dict[str, bool]

    @property
    def passed(self) -> bool:
        return (
            self.solver_upper_ok
            and self.composite_ok
            and set(self.failing_rules) == set(NONOPT_ALICE_RULES)
        )


def check_nonoptimality_theorem(k: int) -> NonOptimalityReport:
    """On K_{4,3,...,3,1,1} with k parts: 2k-4 colors suffice, the composite
    opening achieves them, and each simple rule needs more."""
    if k < 6:
        raise ValueError("needs k >= 6 (at least three parts of size 3)")
    sizes = (4,) + (3,) * (k - 3) + (1, 1)
    partition = Partition(sizes)
    budget = 2 * k - 4
    from .solver import alice_wins

    solver_upper_ok = alice_wins(partition, budget)
    composite_ok = restricted_value(partition, budget, ALICE, "acomposite")
    rule_results = {}
    for rule in NONOPT_ALICE_RULES:
        if not get_strategy(rule).is_applicable(partition):
            # n = 3k - 3 is even for odd k, so the odd-opener rules may not
            # even apply; a rule that cannot be played cannot win either.
            rule_results[rule] = False
        else:
            rule_results[rule] = restricted_value(partition, budget, ALICE, rule)
    failing = tuple(rule for rule, won in rule_results.items() if not won)
    return NonOptimalityReport(
        k=k,
        partition=partition,
        budget=budget,
        solver_upper_ok=solver_upper_ok,
        composite_ok=composite_ok,
        failing_rules=failing,
        rule_results=rule_results,
    )
