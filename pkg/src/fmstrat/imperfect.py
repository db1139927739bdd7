"""Imperfect information with visible actions.

An :class:`ObservationLayer` tells one player what they perceive of each
state and action.  An observation-based machine is a plain
:class:`~fmstrat.machine.MealyMachine` over the *observation game*: its
states are state observations and its actions are action observations.
Because owned actions are visible, they are their own observations, so the
machine's outputs are real actions.

:func:`lift` turns such a machine into a machine of the underlying game by
reading every (state, action) pair through the layer.  Equivalence of
observation-based machines is equivalence of their lifts.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping

from .game import Game, History, ValidationReport, Violation, moves
from .machine import MealyMachine, MemoryCursor, validate_machine
from .probability import canonical, uniform


@dataclass(frozen=True)
class ObservationLayer:
    """What ``player`` perceives: ``state_obs`` and ``action_obs`` map identifiers to observations."""

    player: int
    state_obs: Mapping[str, str]
    action_obs: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "player", int(self.player))
        object.__setattr__(self, "state_obs", {str(k): str(v) for k, v in self.state_obs.items()})
        object.__setattr__(self, "action_obs", {str(k): str(v) for k, v in self.action_obs.items()})

    @property
    def observations(self) -> tuple:
        return tuple(sorted(set(self.state_obs.values()) | set(self.action_obs.values())))

    def of_state(self, s: str) -> str:
        return self.state_obs[s]

    def of_action(self, a: str) -> str:
        return self.action_obs[a]

    @classmethod
    def identity(cls, game: Game, player: int) -> "ObservationLayer":
        return cls(player, {s: s for s in game.states}, {a: a for a in game.actions})


def validate_layer(layer: ObservationLayer, game: Game) -> ValidationReport:
    """Check totality, equal enabled sets, visible actions and unmixed ownership.

    The last rule says a state observation never covers both a state of the
    player and a state of someone else, so the observer always knows whether
    it is their turn.
    """
    out = []
    for s in game.states:
        if s not in layer.state_obs:
            out.append(Violation("totality", s, "state has no observation"))
    for a in game.actions:
        if a not in layer.action_obs:
            out.append(Violation("totality", a, "action has no observation"))
    if out:
        return ValidationReport(tuple(out))
    groups = defaultdict(list)
    for s in game.states:
        groups[layer.state_obs[s]].append(s)
    for o, members in sorted(groups.items()):
        mine = {game.owner[s] == layer.player for s in members}
        if len(mine) > 1:
            out.append(Violation("ownership", o, f"observation covers owned and foreign states {members}"))
        owned = [s for s in members if game.owner[s] == layer.player]
        if len({game.enabled[s] for s in owned}) > 1:
            out.append(Violation("enabled", o, f"indistinguishable states {owned} enable different actions"))
    own_actions = sorted({a for s in game.owned_states(layer.player) for a in game.enabled[s]})
    for a in own_actions:
        if layer.action_obs[a] != a:
            out.append(Violation("visibility", a, f"own action observed as {layer.action_obs[a]!r}"))
        for x, o in sorted(layer.state_obs.items()):
            if o == a:
                out.append(Violation("visibility", a, f"state {x!r} is observed as own action {a!r}"))
        for x, o in sorted(layer.action_obs.items()):
            if o == a and x != a:
                out.append(Violation("visibility", a, f"action {x!r} is observed as own action {a!r}"))
    return ValidationReport(tuple(out))


def obs_sequence(layer: ObservationLayer, h) -> tuple:
    """Pointwise image of a History or a word under the layer."""
    if isinstance(h, History):
        return tuple(layer.state_obs.get(t, t) if k % 2 == 0 else layer.action_obs.get(t, t)
                     for k, t in enumerate(h.tokens))
    return tuple(x for s, a in h for x in (layer.state_obs[s], layer.action_obs[a]))


def observation_game(game: Game, layer: ObservationLayer) -> Game:
    """The game read through the layer.

    Its transition function is uniform over observed successors; only its
    support is meaningful (it fixes which observation letters may follow).
    """
    validate_layer(layer, game).raise_if_invalid("observation layer")
    owner, enabled, succ = {}, defaultdict(set), defaultdict(set)
    for s in game.states:
        o = layer.state_obs[s]
        p = game.owner[s]
        if p != layer.player:
            p = min(owner.get(o, p), p)
        owner[o] = p
        for a, t in moves(game, s):
            x = layer.action_obs[a]
            enabled[o].add(x)
            succ[(o, x)].add(layer.state_obs[t])
    delta = {key: uniform(targets) for key, targets in succ.items()}
    return Game(owner, enabled, delta)


def validate_observation_machine(machine: MealyMachine, game: Game, layer: ObservationLayer) -> ValidationReport:
    if machine.player != layer.player:
        return ValidationReport((Violation("player", "machine", "machine and layer belong to different players"),))
    return validate_machine(machine, observation_game(game, layer))


def lift(machine: MealyMachine, game: Game, layer: ObservationLayer, check: bool = True) -> MealyMachine:
    """Perfect-information machine playing ``machine`` on observed letters.

    ``check=False`` skips validation; only used to build counter-examples
    for layers that break the visible-action hypothesis.
    """
    if check:
        validate_observation_machine(machine, game, layer).raise_if_invalid("observation machine")
    next_move, update = {}, {}
    for m in machine.memory:
        for s in game.states:
            o = layer.state_obs[s]
            if game.owner[s] == machine.player:
                next_move[(m, s)] = machine.move(m, o)
            for a in game.enabled[s]:
                update[(m, s, a)] = machine.up(m, o, layer.action_obs[a])
    return MealyMachine(machine.player, machine.init, next_move, update, machine.memory)


@dataclass(frozen=True)
class UniformityReport:
    """Pairs of words with the same observations but different memory distributions."""

    violations: tuple = ()
    words_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations


def check_uniformity(machine: MealyMachine, game: Game, layer: ObservationLayer, depth: int,
                     strict: bool = True) -> UniformityReport:
    """Compare mu over all pairs of words of at most ``depth`` steps sharing an observation sequence.

    With ``strict=False`` the layer is not validated, which allows
    demonstrating what goes wrong when actions are not visible.
    """
    lifted = lift(machine, game, layer, check=strict)
    first = {}
    bad = []
    count = 0
    level = [(MemoryCursor(lifted, game), (), s) for s in game.states]
    for d in range(depth + 1):
        for cur, word, _ in (level[:1] if d == 0 else level):  # one empty word
            count += 1
            key = obs_sequence(layer, word)
            mu = canonical(cur.mu)
            if key not in first:
                first[key] = (word, mu)
            elif first[key][1] != mu:
                bad.append((first[key][0], word))
        if d == depth:
            break
        level = [(cur.advance(s, a), word + ((s, a),), t)
                 for cur, word, s in level for a, t in moves(game, s)]
    return UniformityReport(tuple(bad), count)


def check_factoring(lifted: MealyMachine, game: Game, layer: ObservationLayer, depth: int) -> UniformityReport:
    """Induced action distributions of ``lifted`` at owned histories depend only on observations.

    Histories with at most ``depth`` actions are compared; violations are
    pairs of histories.
    """
    first = {}
    bad = []
    count = 0
    level = [(MemoryCursor(lifted, game), History((), s)) for s in game.states]
    for d in range(depth + 1):
        for cur, h in level:
            if game.owner[h.last] != lifted.player:
                continue
            count += 1
            key = obs_sequence(layer, h)
            dist = canonical(cur.action_distribution(h.last))
            if key not in first:
                first[key] = (h, dist)
            elif first[key][1] != dist:
                bad.append((first[key][0], h))
        if d == depth:
            break
        level = [(cur.advance(h.last, a), h.extend(a, t)) for cur, h in level for a, t in moves(game, h.last)]
    return UniformityReport(tuple(bad), count)


def transform_under_layer(transform, machine: MealyMachine, game: Game, layer: ObservationLayer,
                          **kwargs) -> MealyMachine:
    """Apply a machine transformation to an observation-based machine over observation letters."""
    return transform(machine, observation_game(game, layer), **kwargs)
