"""Move-selection rules for both players.

Every rule is a priority list of clauses evaluated on the owner's turn; the
first clause that matches the position decides the move. `admissible_moves`
returns every move the matched clause allows (the universal reading of each
"pick any part" freedom), while `choose_move` applies the deterministic
tie-breaks: lowest part index first, and the smallest already-present color
when a concrete reused color is needed for a transcript.

Alice's rules:
  a1   start unstarted parts with new colors, otherwise reuse anywhere.
  a2   anchor play on a fixed size-3 part: open it, mirror the opponent
       inside it, then fall back to a1 behavior.
  a3   (odd vertex total) open the smallest odd part, answer the opponent's
       move inside the same still-open part, keep filling open parts by
       reuse, and start only odd-size parts.
  a1p/a2p/a3p  the same rules with "color an uncolored singleton with a new
       color" spliced in: at top priority for a1p/a3p, directly below the
       anchor-part clauses for a2p.
  acomposite   a scripted opening for the K_{4,3,...,3,1,1} family (k >= 6)
       that colors a singleton, branches on the opponent's replies, and then
       hands over to a2/a2p/a1p with the board as given history.

Bob's rules:
  b1   answer in the part Alice just played while it is open; otherwise fill
       a partial part with the fewest uncolored vertices; otherwise start the
       largest unstarted part. Use a new color whenever the budget allows.
  b1p  b1, except that when only parts of size <= 2 remain unstarted, it
       starts the smallest (singletons before pairs).

`random:<seed>` (uniform over legal moves) and `human` (interactive) are
harness plumbing, not analyzed rules.
"""

from __future__ import annotations

import random
from typing import Callable, Hashable, Optional

from .core import (
    ALICE,
    BOB,
    GameState,
    GameStatus,
    Move,
    Partition,
    legal_moves,
    partially_colored_parts,
    status,
    uncolored_parts,
)


class InapplicableStrategyError(ValueError):
    """The rule's shape constraints do not hold for this partition."""


class StrategyTotalityError(RuntimeError):
    """No clause matched; reachable only through a foreign game history."""


class Strategy:
    """Base class: a deterministic move rule plus its admissible-move sets."""

    id: str = ""
    side: Optional[str] = None  # ALICE, BOB, or None when either seat works
    needs_last_move: bool = False  # solver memo keys must mark the last part

    def is_applicable(self, partition: Partition) -> bool:
        return True

    def initial_aux(self, partition: Partition) -> Hashable:
        """Per-game bookkeeping carried alongside the state (hashable)."""
        return None

    def advance(self, aux: Hashable, state: GameState, move: Move) -> Hashable:
        """Update bookkeeping for a move by either player from `state`."""
        return aux

    def admissible(self, aux: Hashable, state: GameState) -> list[Move]:
        raise NotImplementedError

    def choose(self, aux: Hashable, state: GameState) -> Move:
        moves = self.admissible(aux, state)
        if not moves:
            raise StrategyTotalityError(f"{self.id}: no clause matched")
        return moves[0]

    def part_flags(self, aux: Hashable, state: GameState) -> Optional[tuple[int, ...]]:
        """Per-part markers that must survive canonicalization (anchor parts)."""
        return None

    def memo_extra(self, aux: Hashable, state: GameState) -> Hashable:
        """Whatever bookkeeping beyond counts the rule's future depends on."""
        return None

    def __repr__(self) -> str:
        return f"<Strategy {self.id}>"


def _fresh_into(parts: list[int]) -> list[Move]:
    return [Move(i, True) for i in parts]


def _reuse_into(parts: list[int]) -> list[Move]:
    return [Move(i, False) for i in parts]


class FreshStarter(Strategy):
    """a1: new color into any unstarted part, else reuse in a partial one."""

    id = "a1"
    side = ALICE

    def admissible(self, aux, state):
        unstarted = uncolored_parts(state)
        if unstarted:
            return _fresh_into(unstarted)
        return _reuse_into(partially_colored_parts(state))


class SingletonFreshStarter(FreshStarter):
    """a1p: a1 with uncolored singletons claimed first."""

    id = "a1p"

    def admissible(self, aux, state):
        singles = [i for i in uncolored_parts(state) if state.parts[i].size == 1]
        if singles:
            return _fresh_into(singles)
        return super().admissible(aux, state)


def _anchor_moves(
    state: GameState,
    anchor: int,
    opened: bool,
    singletons_between: bool,
) -> list[Move]:
    """Shared clause body for a2/a2p and their delegated forms.

    `anchor` is the fixed size-3 part; `opened` records whether the opening
    move into it has already been accounted for.
    """
    parts = state.parts
    if not opened and not parts[anchor].is_full:
        return [Move(anchor, True)]
    last = state.last_move
    if (
        last is not None
        and last.part == anchor
        and not parts[anchor].is_full
        and parts[anchor].colored > 0
    ):
        return [Move(anchor, False)]
    if singletons_between:
        singles = [i for i in uncolored_parts(state) if parts[i].size == 1]
        if singles:
            return _fresh_into(singles)
    unstarted = uncolored_parts(state)
    if unstarted:
        return _fresh_into(unstarted)
    return _reuse_into(partially_colored_parts(state))


class TripleAnchor(Strategy):
    """a2: open the fixed size-3 part first and mirror Bob inside it."""

    id = "a2"
    side = ALICE
    needs_last_move = True
    with_singleton_rule = False

    def is_applicable(self, partition):
        return partition.k >= 2 and 3 in partition.sizes

    def anchor(self, partition: Partition) -> int:
        return partition.sizes.index(3)

    def initial_aux(self, partition):
        return False  # opening move into the anchor not yet played

    def advance(self, aux, state, move):
        if state.turn == ALICE:
            return True
        return aux

    def admissible(self, aux, state):
        return _anchor_moves(
            state, self.anchor(state.partition), aux, self.with_singleton_rule
        )

    def part_flags(self, aux, state):
        anchor = self.anchor(state.partition)
        return tuple(1 if i == anchor else 0 for i in range(state.partition.k))

    def memo_extra(self, aux, state):
        return aux


class SingletonTripleAnchor(TripleAnchor):
    """a2p: a2 with the singleton rule just below the anchor-part clauses."""

    id = "a2p"
    with_singleton_rule = True


class OddOpener(Strategy):
    """a3: open odd parts, echo the opponent inside open parts, reuse."""

    id = "a3"
    side = ALICE
    needs_last_move = True
    singletons_first = False

    def is_applicable(self, partition):
        return partition.n % 2 == 1

    def admissible(self, aux, state):
        parts = state.parts
        if self.singletons_first:
            singles = [i for i in uncolored_parts(state) if parts[i].size == 1]
            if singles:
                return _fresh_into(singles)
        if state.move_count == 0:
            odd = [r for r in state.partition.sizes if r % 2 == 1]
            smallest = min(odd)
            return _fresh_into(
                [i for i, r in enumerate(state.partition.sizes) if r == smallest]
            )
        last = state.last_move
        if last is not None and 0 < parts[last.part].colored < parts[last.part].size:
            return [Move(last.part, False)]
        partial = partially_colored_parts(state)
        if partial:
            return _reuse_into(partial)
        odd_unstarted = [
            i for i in uncolored_parts(state) if parts[i].size % 2 == 1
        ]
        if not odd_unstarted:
            # Provably unreachable when this seat has played the rule from
            # the start: a board with only full and even unstarted parts has
            # an odd move count, so it cannot be Alice's turn.
            return []
        smallest = min(parts[i].size for i in odd_unstarted)
        return _fresh_into(
            [i for i in odd_unstarted if parts[i].size == smallest]
        )


class SingletonOddOpener(OddOpener):
    """a3p: a3 with the singleton rule at top priority (same first move)."""

    id = "a3p"
    singletons_first = True


class EchoResponder(Strategy):
    """b1: echo into Alice's part, else fill the fullest partial part, else
    start the largest unstarted part; fresh color whenever possible."""

    id = "b1"
    side = BOB
    needs_last_move = True
    small_parts_last = False

    def _filler(self, state: GameState, part: int) -> Move:
        return Move(part, state.used < state.budget)

    def admissible(self, aux, state):
        parts = state.parts
        last = state.last_move
        if last is not None and not parts[last.part].is_full:
            return [self._filler(state, last.part)]
        partial = partially_colored_parts(state)
        if partial:
            fewest = min(parts[i].uncolored for i in partial)
            return [
                self._filler(state, i)
                for i in partial
                if parts[i].uncolored == fewest
            ]
        unstarted = uncolored_parts(state)
        if not unstarted:
            return []
        if self.small_parts_last:
            big = [i for i in unstarted if parts[i].size >= 3]
            if big:
                largest = max(parts[i].size for i in big)
                return _fresh_into([i for i in big if parts[i].size == largest])
            smallest = min(parts[i].size for i in unstarted)
            return _fresh_into(
                [i for i in unstarted if parts[i].size == smallest]
            )
        largest = max(parts[i].size for i in unstarted)
        return _fresh_into([i for i in unstarted if parts[i].size == largest])


class SmallLastEchoResponder(EchoResponder):
    """b1p: b1 that starts leftover singletons before leftover pairs."""

    id = "b1p"
    small_parts_last = True


class CompositeOpening(Strategy):
    """acomposite: scripted opening for K_{4,3,...,3,1,1} with k >= 6.

    Color a singleton; then, depending on the opponent's first reply, either
    hand over to the anchor rule (a2) directly, fill the second singleton
    first, or contest the size-4 part and decide between a1p and a2p after
    the opponent's second reply. Delegated rules treat the current board as
    given history; a delegated anchor rule adopts a part the opponent just
    opened as its anchor.
    """

    id = "acomposite"
    side = ALICE
    needs_last_move = True

    # aux is a tuple whose head names the phase:
    #   ("open",)                 Alice's scripted first move
    #   ("reply1",)               waiting for the opponent's first reply
    #   ("fill_singleton", vj)    claim the second singleton, then anchor vj
    #   ("join_big",)             scripted reuse in the size-4 part
    #   ("reply2",)               waiting for the opponent's second reply
    #   ("close_big",)            scripted completion of the size-4 part
    #   ("watch",)                waiting to pick the anchor for a2p
    #   ("anchor", vj, opened)    delegated a2
    #   ("anchor_s", vj, opened)  delegated a2p
    #   ("solo",)                 delegated a1p

    def is_applicable(self, partition):
        sizes = partition.sizes
        k = partition.k
        return (
            k >= 6
            and sizes[0] == 4
            and sizes[k - 2 :] == (1, 1)
            and all(r == 3 for r in sizes[1 : k - 2])
        )

    def initial_aux(self, partition):
        return ("open",)

    def _first_triple(self, partition: Partition) -> int:
        return partition.sizes.index(3)

    def advance(self, aux, state, move):
        phase = aux[0]
        sizes = state.partition.sizes
        if phase == "open":
            return ("reply1",)
        if phase == "reply1":
            size = sizes[move.part]
            if size == 1:
                return ("anchor", self._first_triple(state.partition), False)
            if size == 3:
                return ("fill_singleton", move.part)
            return ("join_big",)
        if phase == "fill_singleton":
            # The opponent's opening move into the triple stands in for our
            # own anchor-opening move.
            return ("anchor", aux[1], True)
        if phase == "join_big":
            return ("reply2",)
        if phase == "reply2":
            if move.part == 0:
                return ("close_big",)
            return ("solo",)
        if phase == "close_big":
            return ("watch",)
        if phase == "watch":
            if sizes[move.part] == 3:
                return ("anchor_s", move.part, True)
            return ("anchor_s", self._first_triple(state.partition), False)
        if phase in ("anchor", "anchor_s") and state.turn == ALICE:
            return (phase, aux[1], True)
        return aux

    def admissible(self, aux, state):
        phase = aux[0]
        parts = state.parts
        if phase == "open":
            singles = [i for i, p in enumerate(parts) if p.size == 1]
            return _fresh_into(singles)
        if phase == "fill_singleton":
            singles = [
                i for i, p in enumerate(parts) if p.size == 1 and p.is_uncolored
            ]
            return _fresh_into(singles)
        if phase in ("join_big", "close_big"):
            return [Move(0, False)]
        if phase == "anchor":
            return _anchor_moves(state, aux[1], aux[2], False)
        if phase == "anchor_s":
            return _anchor_moves(state, aux[1], aux[2], True)
        if phase == "solo":
            singles = [i for i in uncolored_parts(state) if parts[i].size == 1]
            if singles:
                return _fresh_into(singles)
            unstarted = uncolored_parts(state)
            if unstarted:
                return _fresh_into(unstarted)
            return _reuse_into(partially_colored_parts(state))
        # reply1/reply2/watch are opponent-turn phases
        return []

    def part_flags(self, aux, state):
        if aux[0] in ("anchor", "anchor_s", "fill_singleton"):
            vj = aux[1]
            return tuple(1 if i == vj else 0 for i in range(state.partition.k))
        return None

    def memo_extra(self, aux, state):
        if aux[0] in ("anchor", "anchor_s"):
            return (aux[0], aux[2])
        return (aux[0],)


class RandomMover(Strategy):
    """Seeded uniform choice among all legal moves."""

    side = None

    def __init__(self, seed: Optional[int] = None):
        self.seed = seed
        self.id = "random" if seed is None else f"random:{seed}"

    def with_seed(self, seed: int) -> "RandomMover":
        return RandomMover(self.seed if self.seed is not None else seed)

    def admissible(self, aux, state):
        return legal_moves(state)

    def choose(self, aux, state):
        seed = self.seed if self.seed is not None else 0
        rng = random.Random(seed * 1_000_003 + state.move_count)
        return rng.choice(legal_moves(state))

    def memo_extra(self, aux, state):
        return state.move_count


class HumanPlayer(Strategy):
    """Interactive seat; the caller wires in a picker callback."""

    id = "human"
    side = None

    def __init__(self, picker: Optional[Callable[[GameState, list[Move]], Move]] = None):
        self.picker = picker

    def admissible(self, aux, state):
        return legal_moves(state)

    def choose(self, aux, state):
        if self.picker is None:
            raise InapplicableStrategyError("human seat needs an interactive session")
        return self.picker(state, legal_moves(state))


_REGISTRY = {
    "a1": FreshStarter,
    "a1p": SingletonFreshStarter,
    "a2": TripleAnchor,
    "a2p": SingletonTripleAnchor,
    "a3": OddOpener,
    "a3p": SingletonOddOpener,
    "acomposite": CompositeOpening,
    "b1": EchoResponder,
    "b1p": SmallLastEchoResponder,
}

STRATEGY_NAMES = tuple(_REGISTRY) + ("random:<seed>", "human")


def get_strategy(name: str) -> Strategy:
    """Resolve a strategy name as accepted by the CLI."""
    key = name.strip().lower()
    if key in _REGISTRY:
        return _REGISTRY[key]()
    if key == "random":
        return RandomMover()
    if key.startswith("random:"):
        try:
            return RandomMover(int(key.split(":", 1)[1]))
        except ValueError:
            raise ValueError(f"bad random seed in {name!r}") from None
    if key == "human":
        return HumanPlayer()
    raise ValueError(f"unknown strategy {name!r}; expected one of {', '.join(STRATEGY_NAMES)}")


def is_applicable(strategy: Strategy | str, partition: Partition) -> bool:
    if isinstance(strategy, str):
        strategy = get_strategy(strategy)
    return strategy.is_applicable(partition)


class StrategyContext:
    """A game state plus the rule's bookkeeping, reconstructible from history."""

    __slots__ = ("state", "aux")

    def __init__(self, state: GameState, aux: Hashable):
        self.state = state
        self.aux = aux

    @classmethod
    def initial(cls, strategy: Strategy, state: GameState) -> "StrategyContext":
        return cls(state, strategy.initial_aux(state.partition))

    def advanced(self, strategy: Strategy, state_after: GameState, move: Move) -> "StrategyContext":
        """Context after `move` was applied to our state, yielding `state_after`."""
        return StrategyContext(state_after, strategy.advance(self.aux, self.state, move))


def context_from_history(
    strategy: Strategy, partition: Partition, budget: int, moves: list[Move]
) -> StrategyContext:
    """Rebuild the context by replaying a transcript."""
    from .core import apply_move, initial_state

    state = initial_state(partition, budget)
    ctx = StrategyContext.initial(strategy, state)
    for move in moves:
        state = apply_move(state, move)
        ctx = ctx.advanced(strategy, state, move)
    return ctx


def _check_turn(strategy: Strategy, ctx: StrategyContext) -> None:
    if not strategy.is_applicable(ctx.state.partition):
        raise InapplicableStrategyError(
            f"{strategy.id} is not applicable to {ctx.state.partition.label()}"
        )
    if status(ctx.state) is not GameStatus.ONGOING:
        raise ValueError("game is over")
    if strategy.side is not None and ctx.state.turn != strategy.side:
        raise ValueError(f"{strategy.id} plays as {strategy.side}; it is {ctx.state.turn}'s turn")


def choose_move(strategy: Strategy, ctx: StrategyContext) -> Move:
    """The rule's deterministic move for this position."""
    _check_turn(strategy, ctx)
    move = strategy.choose(ctx.aux, ctx.state)
    return move


def admissible_moves(strategy: Strategy, ctx: StrategyContext) -> list[Move]:
    """Every move the first matching clause allows; contains choose_move's pick."""
    _check_turn(strategy, ctx)
    moves = strategy.admissible(ctx.aux, ctx.state)
    if not moves:
        raise StrategyTotalityError(f"{strategy.id}: no clause matched")
    return moves
