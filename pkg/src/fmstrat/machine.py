"""Stochastic Mealy machines and the finite-memory strategies they induce.

A machine ``(M, init, next_move, update)`` of some player reads the play as a
word over (state, action) pairs.  ``next_move`` is only defined on states the
player owns; ``update`` is defined on every enabled (state, action) pair.

The distribution over memory states after a word is maintained exactly:

* at a state of another player the update is the plain mixture
  ``sum_m' mu(m') * update(m', s, a)``;
* at an owned state the mixture is conditioned on the played action, i.e.
  weighted by ``next_move(m', s)(a)`` and renormalised.  When no memory
  state in the support could have played the action, the plain mixture is
  used instead.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .game import Game, History, ValidationReport, Violation, Word, check_history, check_word
from .probability import (
    ONE,
    ZERO,
    FMError,
    InputError,
    distribution_problems,
    is_dirac,
    make_dist,
)


class OracleUndefinedError(FMError):
    """The brute-force oracle has no value: the word has zero total weight."""


@dataclass(frozen=True)
class StrategyClass:
    init_tag: str
    output_tag: str
    update_tag: str

    def __str__(self) -> str:
        return self.init_tag + self.output_tag + self.update_tag

    @classmethod
    def parse(cls, text: str) -> "StrategyClass":
        if len(text) != 3 or set(text) - {"D", "R"}:
            raise InputError(f"not a strategy class: {text!r}")
        return cls(*text)


@dataclass(frozen=True)
class MealyMachine:
    """A stochastic Mealy machine of ``player``.

    ``next_move`` is keyed by ``(memory, state)`` and ``update`` by
    ``(memory, state, action)``; values are distributions.  ``memory`` is
    inferred from the other components when omitted.
    """

    player: int
    init: Mapping[str, Fraction]
    next_move: Mapping[tuple, dict]
    update: Mapping[tuple, dict]
    memory: tuple = ()

    def __post_init__(self):
        init = make_dist(self.init)
        next_move = {(str(m), str(s)): make_dist(d) for (m, s), d in self.next_move.items()}
        update = {(str(m), str(s), str(a)): make_dist(d) for (m, s, a), d in self.update.items()}
        mem = {str(m) for m in self.memory} | set(init)
        mem.update(m for m, _ in next_move)
        for (m, _, _), row in update.items():
            mem.add(m)
            mem.update(row)
        object.__setattr__(self, "player", int(self.player))
        object.__setattr__(self, "init", init)
        object.__setattr__(self, "next_move", next_move)
        object.__setattr__(self, "update", update)
        object.__setattr__(self, "memory", tuple(sorted(mem)))

    def __len__(self) -> int:
        return len(self.memory)

    def move(self, m: str, s: str) -> dict:
        return self.next_move.get((m, s), {})

    def up(self, m: str, s: str, a: str) -> dict:
        return self.update.get((m, s, a), {})

    def renamed(self, memory=None, states=None, actions=None) -> "MealyMachine":
        """Copy with identifiers passed through the given renaming dicts."""
        rm = (memory or {}).get
        rs = (states or {}).get
        ra = (actions or {}).get
        return MealyMachine(
            self.player,
            {rm(m, m): p for m, p in self.init.items()},
            {(rm(m, m), rs(s, s)): {ra(a, a): p for a, p in d.items()}
             for (m, s), d in self.next_move.items()},
            {(rm(m, m), rs(s, s), ra(a, a)): {rm(n, n): p for n, p in d.items()}
             for (m, s, a), d in self.update.items()},
            tuple(rm(m, m) for m in self.memory),
        )


def validate_machine(machine: MealyMachine, game: Game) -> ValidationReport:
    out = []
    owned = set(game.owned_states(machine.player))
    if not machine.memory:
        out.append(Violation("empty", "memory", "machine has no memory states"))
    for p in distribution_problems(machine.init):
        out.append(Violation("normalisation", "init", p))
    for m in machine.memory:
        for s in sorted(owned):
            key = (m, s)
            row = machine.next_move.get(key)
            if row is None:
                out.append(Violation("totality", f"next_move{key}", "missing next-move row"))
                continue
            for p in distribution_problems(row):
                out.append(Violation("normalisation", f"next_move{key}", p))
            extra = sorted(set(row) - set(game.enabled.get(s, ())))
            if extra:
                out.append(Violation("disabled-output", f"next_move{key}", f"actions {extra} not enabled"))
        for s in game.states:
            for a in game.enabled.get(s, ()):
                key = (m, s, a)
                row = machine.update.get(key)
                if row is None:
                    out.append(Violation("totality", f"update{key}", "missing update row"))
                    continue
                for p in distribution_problems(row):
                    out.append(Violation("normalisation", f"update{key}", p))
    for m, s in sorted(machine.next_move):
        if s not in owned:
            out.append(Violation("foreign-state", f"next_move{(m, s)}",
                                 f"state {s!r} is not owned by player {machine.player}"))
    for m, s, a in sorted(machine.update):
        if a not in game.enabled.get(s, ()):
            out.append(Violation("disabled-action", f"update{(m, s, a)}", "row for a pair that is not enabled"))
    return ValidationReport(tuple(out))


def classify(machine: MealyMachine) -> StrategyClass:
    def tag(dists):
        return "D" if all(is_dirac(d) for d in dists) else "R"

    return StrategyClass(
        "D" if is_dirac(machine.init) else "R",
        tag(machine.next_move.values()),
        tag(machine.update.values()),
    )


# --- memory distributions --------------------------------------------------

def step_weight(machine: MealyMachine, game: Game, mu: Mapping, state: str, action: str) -> Fraction:
    """Probability that the machine plays ``action`` at ``state`` given ``mu``.

    Always 1 at states owned by other players.
    """
    if game.owner[state] != machine.player:
        return ONE
    return sum((p * machine.move(m, state).get(action, ZERO) for m, p in mu.items()), ZERO)


def _mix(machine: MealyMachine, weights: Mapping, state: str, action: str) -> dict:
    out = {}
    for m, p in weights.items():
        if p == 0:
            continue
        for n, q in machine.up(m, state, action).items():
            out[n] = out.get(n, ZERO) + p * q
    return {n: w for n, w in out.items() if w != 0}


def memory_step(machine: MealyMachine, game: Game, mu: Mapping, state: str, action: str,
                fallback: str = "mixture") -> dict:
    """Distribution over memory after reading ``state action`` from ``mu``.

    ``fallback`` decides the zero-denominator case at owned states:
    ``"mixture"`` applies the unconditioned update, ``"keep"`` returns ``mu``
    unchanged.  Only histories inconsistent with the machine reach it.
    """
    if game.owner[state] != machine.player:
        return _mix(machine, mu, state, action)
    weighted = {m: p * machine.move(m, state).get(action, ZERO) for m, p in mu.items()}
    total = sum(weighted.values(), ZERO)
    if total == 0:
        return dict(mu) if fallback == "keep" else _mix(machine, mu, state, action)
    return {n: w / total for n, w in _mix(machine, weighted, state, action).items()}


class MemoryCursor:
    """Incremental evaluation of the memory distribution along a word.

    ``cursor.advance(s, a)`` returns a new cursor; ``cursor.weight`` is the
    product of the machine's own action probabilities read so far.
    """

    __slots__ = ("machine", "game", "mu", "weight", "fallback")

    def __init__(self, machine: MealyMachine, game: Game, mu=None, weight=ONE, fallback="mixture"):
        self.machine = machine
        self.game = game
        self.mu = dict(machine.init) if mu is None else mu
        self.weight = weight
        self.fallback = fallback

    def advance(self, state: str, action: str) -> "MemoryCursor":
        w = step_weight(self.machine, self.game, self.mu, state, action)
        mu = memory_step(self.machine, self.game, self.mu, state, action, self.fallback)
        return MemoryCursor(self.machine, self.game, mu, self.weight * w, self.fallback)

    def action_distribution(self, state: str) -> dict:
        return _action_dist(self.machine, self.mu, state)


def memory_distribution(machine: MealyMachine, game: Game, w: Word, fallback: str = "mixture") -> dict:
    """The distribution over memory states after ``machine`` has read ``w``."""
    check_word(game, w)
    mu = dict(machine.init)
    for s, a in w:
        mu = memory_step(machine, game, mu, s, a, fallback)
    return mu


def _action_dist(machine: MealyMachine, mu: Mapping, state: str) -> dict:
    out = {}
    for m, p in mu.items():
        for a, q in machine.move(m, state).items():
            out[a] = out.get(a, ZERO) + p * q
    return {a: v for a, v in out.items() if v != 0}


def action_distribution(machine: MealyMachine, game: Game, h: History, fallback: str = "mixture") -> dict:
    """The induced strategy: ``sigma(h)(a) = sum_m mu_w(m) * next_move(m, last)(a)``."""
    check_history(game, h)
    if game.owner[h.last] != machine.player:
        raise InputError(f"state {h.last!r} is not owned by player {machine.player}")
    return _action_dist(machine, memory_distribution(machine, game, h.word, fallback), h.last)


def is_consistent(machine: MealyMachine, game: Game, prefix) -> bool:
    """True iff every owned step of ``prefix`` plays an action of positive probability.

    ``prefix`` is either a :class:`History` or a word.
    """
    word = prefix.word if isinstance(prefix, History) else tuple(prefix)
    mu = dict(machine.init)
    for s, a in word:
        if step_weight(machine, game, mu, s, a) == 0:
            return False
        mu = memory_step(machine, game, mu, s, a)
    return True


def brute_force_memory_distribution(machine: MealyMachine, game: Game, w: Word) -> dict:
    """Memory distribution after ``w`` by summing over every memory path.

    Each path ``m0 ... m_{k+1}`` is weighted by the initial mass of ``m0``,
    the update probabilities along the path and, at owned steps, the
    probability of the played action.  The result is the normalised mass of
    the final memory state.  This does not use :func:`memory_step`.
    """
    check_word(game, w)
    mem = machine.memory
    mass = {}
    for path in itertools.product(mem, repeat=len(w) + 1):
        p = machine.init.get(path[0], ZERO)
        for k, (s, a) in enumerate(w):
            if p == 0:
                break
            if game.owner[s] == machine.player:
                p *= machine.move(path[k], s).get(a, ZERO)
            p *= machine.up(path[k], s, a).get(path[k + 1], ZERO)
        if p:
            mass[path[-1]] = mass.get(path[-1], ZERO) + p
    total = sum(mass.values(), ZERO)
    if total == 0:
        raise OracleUndefinedError("word is inconsistent with the machine (total path weight zero)")
    return {m: v / total for m, v in mass.items()}
