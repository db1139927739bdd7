"""Turn-based stochastic games with N players.

A game is a finite graph whose states each belong to one player (a positive
integer).  In every state the owner picks an enabled action and the successor
is drawn from an exact rational distribution.  Two-player games and MDPs are
just the cases with two owners or one owner.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .probability import InputError, distribution_problems, make_dist

Word = tuple  # tuple of (state, action) pairs


@dataclass(frozen=True)
class Violation:
    kind: str
    where: str
    message: str

    def __str__(self) -> str:
        return f"{self.kind} at {self.where}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    """Every violated well-formedness invariant found by a validator.

    An empty report means the checked object is well formed.
    """

    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set:
        return {v.kind for v in self.violations}

    def __len__(self) -> int:
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def raise_if_invalid(self, what: str = "input") -> None:
        if self.violations:
            lines = "\n  ".join(str(v) for v in self.violations)
            raise InputError(f"invalid {what}:\n  {lines}")


@dataclass(frozen=True)
class Game:
    """A stochastic game of perfect information.

    ``owner`` maps each state to its player, ``enabled`` gives the available
    actions per state and ``delta`` maps ``(state, action)`` to a successor
    distribution.  Identifiers are strings; every public collection is kept
    sorted so that iteration order is deterministic.

    Construction only normalises the containers; use :func:`validate_game`
    to check the model invariants.
    """

    owner: Mapping[str, int]
    enabled: Mapping[str, tuple]
    delta: Mapping[tuple, dict]
    actions: tuple = field(default=())

    def __post_init__(self):
        owner = {str(s): int(p) for s, p in self.owner.items()}
        enabled = {str(s): tuple(sorted(set(acts))) for s, acts in self.enabled.items()}
        delta = {(str(s), str(a)): make_dist(row) for (s, a), row in self.delta.items()}
        actions = set(self.actions)
        for acts in enabled.values():
            actions.update(acts)
        actions.update(a for _, a in delta)
        object.__setattr__(self, "owner", owner)
        object.__setattr__(self, "enabled", enabled)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "actions", tuple(sorted(actions)))

    @property
    def states(self) -> tuple:
        return tuple(sorted(self.owner))

    @property
    def players(self) -> tuple:
        return tuple(sorted(set(self.owner.values())))

    def owned_states(self, player: int) -> tuple:
        return tuple(s for s in self.states if self.owner[s] == player)

    def successors(self, state: str, action: str) -> tuple:
        return tuple(sorted(self.delta.get((state, action), {})))

    def prob(self, state: str, action: str, succ: str) -> Fraction:
        return self.delta.get((state, action), {}).get(succ, Fraction(0))

    def is_deterministic(self) -> bool:
        return all(len(row) == 1 for row in self.delta.values())


@dataclass(frozen=True)
class History:
    """A finite history ``s0 a0 s1 ... s_k``: a word plus the last state."""

    word: Word
    last: str

    @classmethod
    def of(cls, *tokens: str) -> "History":
        """Build from alternating state/action tokens, ending in a state."""
        if len(tokens) % 2 == 0:
            raise InputError("a history alternates states and actions and ends in a state")
        word = tuple((tokens[i], tokens[i + 1]) for i in range(0, len(tokens) - 1, 2))
        return cls(word, tokens[-1])

    @classmethod
    def parse(cls, text: str) -> "History":
        return cls.of(*text.split())

    @property
    def first(self) -> str:
        return self.word[0][0] if self.word else self.last

    @property
    def tokens(self) -> tuple:
        return tuple(t for step in self.word for t in step) + (self.last,)

    def __len__(self) -> int:
        return len(self.word)

    def extend(self, action: str, succ: str) -> "History":
        return History(self.word + ((self.last, action),), succ)

    def __str__(self) -> str:
        return " ".join(self.tokens)


def parse_word(text: str | Sequence[str]) -> Word:
    tokens = text.split() if isinstance(text, str) else list(text)
    if len(tokens) % 2:
        raise InputError("a word alternates states and actions and ends in an action")
    return tuple((tokens[i], tokens[i + 1]) for i in range(0, len(tokens), 2))


def validate_game(game: Game) -> ValidationReport:
    out = []
    if not game.owner:
        out.append(Violation("empty", "game", "no states"))
    for s, p in sorted(game.owner.items()):
        if p < 1:
            out.append(Violation("owner", s, f"player id {p} is not positive"))
    for s in game.states:
        if not game.enabled.get(s):
            out.append(Violation("deadlock", s, "no enabled action"))
    for s in sorted(game.enabled):
        if s not in game.owner:
            out.append(Violation("unknown-state", s, "enabled actions given for a state without owner"))
        for a in game.enabled[s]:
            if (s, a) not in game.delta:
                out.append(Violation("missing-transition", f"({s}, {a})", "enabled action has no successor distribution"))
    for (s, a), row in sorted(game.delta.items()):
        where = f"({s}, {a})"
        if a not in game.enabled.get(s, ()):
            out.append(Violation("disabled-action", where, "transition defined for an action that is not enabled"))
        for problem in distribution_problems(row):
            out.append(Violation("normalisation", where, problem))
        for succ in row:
            if succ not in game.owner:
                out.append(Violation("unknown-state", where, f"successor {succ!r} is not a state"))
    return ValidationReport(tuple(out))


def check_history(game: Game, h: History) -> None:
    """Raise :class:`InputError` unless ``h`` is a valid history of ``game``."""
    if h.last not in game.owner:
        raise InputError(f"unknown state {h.last!r}")
    states = [s for s, _ in h.word] + [h.last]
    for k, (s, a) in enumerate(h.word):
        if s not in game.owner:
            raise InputError(f"unknown state {s!r}")
        if not is_valid_step(game, s, a, states[k + 1]):
            raise InputError(f"invalid step {s} {a} {states[k + 1]} in history {h}")


def check_word(game: Game, w: Word) -> None:
    """Raise unless ``w`` is a valid element of (SA)* in ``game``."""
    for k, (s, a) in enumerate(w):
        if s not in game.owner:
            raise InputError(f"unknown state {s!r}")
        if a not in game.enabled.get(s, ()):
            raise InputError(f"action {a!r} is not enabled in {s!r}")
        if k and game.prob(*w[k - 1], s) <= 0:
            raise InputError(f"{s!r} is not a successor of {w[k - 1]}")


def is_valid_step(game: Game, state: str, action: str, succ: str) -> bool:
    return action in game.enabled.get(state, ()) and game.prob(state, action, succ) > 0


def is_valid_extension(game: Game, h: History, action: str, succ: str) -> bool:
    return is_valid_step(game, h.last, action, succ)


def moves(game: Game, state: str) -> Iterator[tuple]:
    """Valid ``(action, successor)`` pairs out of ``state`` in lexicographic order."""
    for a in game.enabled.get(state, ()):
        for succ in game.successors(state, a):
            yield a, succ


def enumerate_histories(game: Game, init: str, max_actions: int) -> Iterator[History]:
    """All histories from ``init`` with at most ``max_actions`` actions.

    Histories come out by length, then lexicographically on their tokens.
    """
    if init not in game.owner:
        raise InputError(f"unknown initial state {init!r}")
    level = [History((), init)]
    for depth in range(max_actions + 1):
        yield from level
        if depth == max_actions:
            return
        level = [h.extend(a, t) for h in level for a, t in moves(game, h.last)]


def history_words(h: History) -> Iterator[tuple]:
    """Yield ``(prefix_history, action)`` for each step of ``h``."""
    prefix = History((), h.first)
    for k, (s, a) in enumerate(h.word):
        yield prefix, a
        nxt = h.word[k + 1][0] if k + 1 < len(h.word) else h.last
        prefix = prefix.extend(a, nxt)
