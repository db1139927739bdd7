"""Small random games and machines for property tests and cross-validation.

Everything is driven by a :class:`random.Random` so instances are
reproducible from an integer seed.  Probabilities use small denominators to
keep exact arithmetic cheap.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .game import Game
from .machine import MealyMachine, StrategyClass


def random_dist(rng: random.Random, outcomes, dirac: bool = False, max_support: int | None = None) -> dict:
    outcomes = sorted(outcomes)
    if dirac:
        return {rng.choice(outcomes): Fraction(1)}
    k = rng.randint(1, min(len(outcomes), max_support or len(outcomes)))
    chosen = rng.sample(outcomes, k)
    weights = [rng.randint(1, 4) for _ in chosen]
    total = sum(weights)
    return {o: Fraction(w, total) for o, w in zip(chosen, weights)}


def random_game(rng: random.Random, n_states: int = 3, n_actions: int = 2, n_players: int = 2,
                deterministic: bool = False) -> Game:
    """A valid game; every player in ``1..n_players`` owns at least one state if possible."""
    states = [f"s{i}" for i in range(n_states)]
    actions = [f"a{i}" for i in range(n_actions)]
    players = list(range(1, n_players + 1))
    owners = players[:n_states] + [rng.choice(players) for _ in range(n_states - len(players))]
    rng.shuffle(owners)
    owner = dict(zip(states, owners))
    enabled, delta = {}, {}
    for s in states:
        # player 1 always has a real choice when there is more than one action
        low = min(2, n_actions) if owner[s] == 1 else 1
        acts = rng.sample(actions, rng.randint(low, n_actions))
        enabled[s] = acts
        for a in acts:
            delta[(s, a)] = random_dist(rng, states, dirac=deterministic, max_support=2)
    return Game(owner, enabled, delta, actions)


def random_machine(rng: random.Random, game: Game, player: int, n_memory: int = 2,
                   cls: StrategyClass | str = "RRR") -> MealyMachine:
    """A valid machine of ``player``; ``cls`` picks which components are forced Dirac.

    An ``R`` tag allows randomisation but does not guarantee it.
    """
    if isinstance(cls, str):
        cls = StrategyClass.parse(cls)
    memory = [f"m{i}" for i in range(n_memory)]
    init = random_dist(rng, memory, dirac=cls.init_tag == "D")
    next_move, update = {}, {}
    for m in memory:
        for s in game.states:
            if game.owner[s] == player:
                next_move[(m, s)] = random_dist(rng, game.enabled[s], dirac=cls.output_tag == "D")
            for a in game.enabled[s]:
                update[(m, s, a)] = random_dist(rng, memory, dirac=cls.update_tag == "D", max_support=2)
    return MealyMachine(player, init, next_move, update, tuple(memory))


def random_instance(seed: int, max_states: int = 4, max_actions: int = 3, max_memory: int = 4,
                    cls: str = "RRR", n_players: int = 2):
    """``(game, machine)`` for player 1 with sizes drawn uniformly up to the bounds."""
    rng = random.Random(seed)
    game = random_game(rng, rng.randint(1, max_states), rng.randint(min(2, max_actions), max_actions),
                       n_players=n_players)
    machine = random_machine(rng, game, 1, rng.randint(1, max_memory), cls)
    return game, machine


CLASSES = tuple(a + b + c for a in "DR" for b in "DR" for c in "DR")


def perturbed(rng: random.Random, machine: MealyMachine, game: Game) -> MealyMachine:
    """Copy with one next-move row redrawn (often, not always, a behavioural change)."""
    keys = sorted(k for k, row in machine.next_move.items() if len(game.enabled[k[1]]) > 1)
    if not keys:
        return machine
    key = rng.choice(keys)
    nxt = dict(machine.next_move)
    nxt[key] = random_dist(rng, game.enabled[key[1]])
    return MealyMachine(machine.player, machine.init, nxt, machine.update, machine.memory)


def random_pair(seed: int, max_states: int = 2, max_actions: int = 2, max_memory: int = 2):
    """``(kind, game, left, right)`` for cross-validating equivalence checkers.

    ``seed % 4`` picks the kind: 0 pairs a machine with its
    ``rrr_to_drr`` image, 1 with its ``rrr_to_rdr`` image, 2 with an
    independent machine of the same class, 3 with a perturbed copy.  The
    class cycles through all eight D/R combinations with ``seed // 4``.
    """
    from .transforms import rrr_to_drr, rrr_to_rdr

    cls = CLASSES[(seed // 4) % len(CLASSES)]
    game, left = random_instance(seed, max_states, max_actions, max_memory, cls)
    rng = random.Random(seed + 7919)
    kind = ("drr", "rdr", "independent", "perturbed")[seed % 4]
    if kind == "drr":
        right = rrr_to_drr(left, game)
    elif kind == "rdr":
        right = rrr_to_rdr(left, game)
    elif kind == "independent":
        right = random_machine(rng, game, 1, rng.randint(1, max_memory), cls)
    else:
        right = perturbed(rng, left, game)
    return kind, game, left, right
