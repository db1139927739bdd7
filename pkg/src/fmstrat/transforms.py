"""Class-changing constructions on Mealy machines.

* :func:`rdd_to_drd` removes the initial randomisation of a machine with
  deterministic outputs and updates, tracking the set of still-possible
  initial memory states (subset-function construction).
* :func:`rrr_to_drr` makes the initialisation deterministic by adjoining a
  fresh initial memory state.
* :func:`rrr_to_rdr` makes outputs deterministic by pre-drawing a pure
  memoryless strategy together with every memory state.

Each output is outcome-equivalent to its input; ``tests/`` checks this with
:mod:`fmstrat.equivalence`.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .game import Game
from .machine import MealyMachine, classify, validate_machine
from .probability import ZERO, InputError, dirac, uniform

BOTTOM = "⊥"


# --- RDD -> DRD -------------------------------------------------------------

@dataclass(frozen=True)
class SubsetFunctionState:
    """Memory state of the DRD machine: where each initial memory state went.

    ``assignment`` maps every initial memory state ``m0`` to the memory state
    reached from ``m0`` along the current history, or :data:`BOTTOM` once the
    history stopped being consistent with the pure machine started in ``m0``.
    """

    assignment: tuple  # ((m0, m or BOTTOM), ...) sorted by m0

    @property
    def alive(self) -> tuple:
        return tuple(m0 for m0, m in self.assignment if m != BOTTOM)

    def __getitem__(self, m0):
        return dict(self.assignment)[m0]

    @property
    def name(self) -> str:
        return "{" + ",".join(f"{m0}>{m}" for m0, m in self.assignment) + "}"


def _single(dist: Mapping):
    (k,) = dist
    return k


def rdd_to_drd_detailed(machine: MealyMachine, game: Game, arbitrary: str = "uniform"):
    """:func:`rdd_to_drd` plus the map from memory names to subset-function states."""
    validate_machine(machine, game).raise_if_invalid("machine")
    cls = classify(machine)
    if cls.output_tag != "D" or cls.update_tag != "D":
        raise InputError(f"rdd_to_drd needs deterministic outputs and updates, got {cls}")
    m0s = tuple(sorted(machine.init))
    weight = machine.init
    owned = game.owned_states(machine.player)
    start = SubsetFunctionState(tuple((m0, m0) for m0 in m0s))

    def successor(f: SubsetFunctionState, s: str, a: str) -> SubsetFunctionState:
        mine = game.owner[s] == machine.player
        out = []
        for m0, m in f.assignment:
            if m == BOTTOM or (mine and _single(machine.move(m, s)) != a):
                out.append((m0, BOTTOM))
            else:
                out.append((m0, _single(machine.up(m, s, a))))
        return SubsetFunctionState(tuple(out))

    def next_move(f: SubsetFunctionState, s: str) -> dict:
        alive = f.alive
        if not alive:
            if arbitrary == "least":
                return dirac(game.enabled[s][0])
            return uniform(game.enabled[s])
        total = sum((weight[m0] for m0 in alive), ZERO)
        out = {}
        for m0 in alive:
            a = _single(machine.move(f[m0], s))
            out[a] = out.get(a, ZERO) + weight[m0] / total
        return out

    seen = {start: start.name}
    queue = deque([start])
    next_rows, update_rows = {}, {}
    while queue:
        f = queue.popleft()
        for s in owned:
            next_rows[(f.name, s)] = next_move(f, s)
        for s in game.states:
            for a in game.enabled[s]:
                g = successor(f, s, a)
                if g not in seen:
                    seen[g] = g.name
                    queue.append(g)
                update_rows[(f.name, s, a)] = dirac(g.name)
    drd = MealyMachine(machine.player, dirac(start.name), next_rows, update_rows,
                       tuple(seen.values()))
    return drd, {name: f for f, name in seen.items()}


def rdd_to_drd(machine: MealyMachine, game: Game, arbitrary: str = "uniform",
               trim: str | None = None) -> MealyMachine:
    """DRD machine outcome-equivalent to a machine with deterministic outputs/updates.

    Only subset-function states reachable from the identity are built.  The
    all-bottom state (reached only by inconsistent histories) plays uniformly
    over enabled actions, or the least enabled action with ``arbitrary="least"``.
    ``trim`` applies :func:`reachable_trim` to the input (``"before"``), to
    the output (``"after"``) or to both (``"both"``); neither order is
    claimed to give the smaller machine.
    """
    if trim not in (None, "before", "after", "both"):
        raise InputError(f"trim must be before, after or both, not {trim!r}")
    if trim in ("before", "both"):
        machine = reachable_trim(machine, game)
    out = rdd_to_drd_detailed(machine, game, arbitrary)[0]
    if trim in ("after", "both"):
        out = reachable_trim(out, game)
    return out


# --- RRR -> DRR -------------------------------------------------------------

def _fresh(name: str, taken) -> str:
    while name in taken:
        name += "'"
    return name


def rrr_to_drr(machine: MealyMachine, game: Game, arbitrary: str = "mixture",
               init_name: str = "init") -> MealyMachine:
    """Machine with a Dirac initial state and exactly one more memory state.

    The new state plays the ``init``-weighted mixture of the first moves and
    then jumps into the original memory, conditioned on the played action at
    owned states.  If the action cannot be played at all from the initial
    distribution the jump uses the plain mixture (``arbitrary="mixture"``) or
    the least memory state (``arbitrary="least"``).
    """
    validate_machine(machine, game).raise_if_invalid("machine")
    b = _fresh(init_name, machine.memory)
    mu0 = machine.init
    next_rows = dict(machine.next_move)
    update_rows = dict(machine.update)
    for s in game.owned_states(machine.player):
        row = {}
        for m, p in mu0.items():
            for a, q in machine.move(m, s).items():
                row[a] = row.get(a, ZERO) + p * q
        next_rows[(b, s)] = row
    for s in game.states:
        mine = game.owner[s] == machine.player
        for a in game.enabled[s]:
            weights = {m: p * (machine.move(m, s).get(a, ZERO) if mine else 1) for m, p in mu0.items()}
            total = sum(weights.values(), ZERO)
            if total == 0:
                if arbitrary == "least":
                    update_rows[(b, s, a)] = dirac(machine.memory[0])
                    continue
                weights, total = dict(mu0), Fraction(1)
            row = {}
            for m, p in weights.items():
                for n, q in machine.up(m, s, a).items():
                    row[n] = row.get(n, ZERO) + p * q / total
            update_rows[(b, s, a)] = {n: v for n, v in row.items() if v}
    return MealyMachine(machine.player, dirac(b), next_rows, update_rows, machine.memory + (b,))


# --- RRR -> RDR -------------------------------------------------------------

@dataclass(frozen=True)
class SegmentPlan:
    """Cut points and derived pure memoryless strategies for one memory state.

    ``cuts`` is ``x_1 < ... < x_{l+1} = 1``; segment ``j`` (0-based) has
    probability ``cuts[j+1] - cuts[j]`` and plays ``strategies[j][s]`` at
    every owned state ``s``.
    """

    memory: str
    order: tuple
    cuts: tuple
    strategies: tuple  # tuple of dicts state -> action

    def __len__(self) -> int:
        return len(self.strategies)

    def probability(self, j: int) -> Fraction:
        return self.cuts[j + 1] - self.cuts[j]

    def indices(self, state: str, action: str) -> list:
        return [j for j, sigma in enumerate(self.strategies) if sigma[state] == action]


def segment_plan(machine: MealyMachine, game: Game, memory: str, order=None) -> SegmentPlan:
    order = tuple(order) if order else game.actions
    if sorted(order) != sorted(game.actions):
        raise InputError(f"action order {order} is not a permutation of {game.actions}")
    owned = game.owned_states(machine.player)
    cumulative = {}  # state -> list of (action, below, upto)
    points = {ZERO}
    for s in owned:
        row = machine.move(memory, s)
        acc = ZERO
        spans = []
        for a in order:
            p = row.get(a, ZERO)
            spans.append((a, acc, acc + p))
            if acc < 1:
                points.add(acc)
            acc += p
        cumulative[s] = spans
    cuts = tuple(sorted(points)) + (Fraction(1),)
    strategies = []
    for x in cuts[:-1]:
        strategies.append({s: next(a for a, lo, hi in cumulative[s] if lo <= x < hi) for s in owned})
    return SegmentPlan(memory, order, cuts, tuple(strategies))


def rrr_to_rdr_detailed(machine: MealyMachine, game: Game, order=None):
    """:func:`rrr_to_rdr` plus the segment plan used for every memory state."""
    validate_machine(machine, game).raise_if_invalid("machine")
    orders = order if isinstance(order, Mapping) else {m: order for m in machine.memory}
    plans = {m: segment_plan(machine, game, m, orders.get(m)) for m in machine.memory}

    def name(m, j):
        return f"{m}#{j + 1}"

    init = {}
    for m, p in machine.init.items():
        for j in range(len(plans[m])):
            init[name(m, j)] = p * plans[m].probability(j)
    next_rows, update_rows = {}, {}
    for m, plan in plans.items():
        for j, sigma in enumerate(plan.strategies):
            for s, a in sigma.items():
                next_rows[(name(m, j), s)] = dirac(a)
            for s in game.states:
                for a in game.enabled[s]:
                    row = {}
                    for n, q in machine.up(m, s, a).items():
                        for k in range(len(plans[n])):
                            row[name(n, k)] = q * plans[n].probability(k)
                    update_rows[(name(m, j), s, a)] = row
    memory = tuple(name(m, j) for m in machine.memory for j in range(len(plans[m])))
    return MealyMachine(machine.player, init, next_rows, update_rows, memory), plans


def rrr_to_rdr(machine: MealyMachine, game: Game, order=None) -> MealyMachine:
    """Machine with deterministic outputs, built from cumulative-probability segments.

    ``order`` is an action order used for every memory state, or a dict giving
    one order per memory state; the default is lexicographic.
    """
    return rrr_to_rdr_detailed(machine, game, order)[0]


# --- trimming ---------------------------------------------------------------

def reachable_supports(machine: MealyMachine, game: Game, inits) -> set:
    """Pairs (state, support of mu) reachable along consistent words from ``inits``."""
    start = frozenset(machine.init)
    seen = {(s, start) for s in inits}
    queue = deque(seen)
    while queue:
        s, supp = queue.popleft()
        mine = game.owner[s] == machine.player
        for a in game.enabled[s]:
            live = [m for m in supp if not mine or machine.move(m, s).get(a, ZERO) > 0]
            if not live:
                continue
            nxt = frozenset(n for m in live for n in machine.up(m, s, a))
            for t in game.successors(s, a):
                if (t, nxt) not in seen:
                    seen.add((t, nxt))
                    queue.append((t, nxt))
    return seen


def reachable_trim(machine: MealyMachine, game: Game, inits=None) -> MealyMachine:
    """Drop memory states that are never in the support of mu along a consistent word.

    Update rows of kept states that put mass on dropped states are only used
    by inconsistent histories; they are replaced by a Dirac self-loop.
    """
    inits = game.states if inits is None else tuple(inits)
    keep = set()
    for _, supp in reachable_supports(machine, game, inits):
        keep |= supp
    if keep == set(machine.memory):
        return machine
    next_rows = {k: v for k, v in machine.next_move.items() if k[0] in keep}
    update_rows = {}
    for (m, s, a), row in machine.update.items():
        if m in keep:
            update_rows[(m, s, a)] = row if set(row) <= keep else dirac(m)
    return MealyMachine(machine.player, machine.init, next_rows, update_rows,
                        tuple(m for m in machine.memory if m in keep))
