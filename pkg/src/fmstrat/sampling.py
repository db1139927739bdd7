"""Monte Carlo simulation of strategy profiles.

This is the only floating-point part of the library.  Plays are simulated in
bulk with numpy: every sample lives in one row of an index array and each
random choice draws one uniform per sample from a single
``numpy.random.Generator(PCG64(seed))`` in a fixed order:

1. initial memory of every player (players in increasing order);
2. per step: the owner's action, then each player's memory update (players
   in increasing order), then the successor state.

The same seed and configuration therefore always give the same plays.  The
generator choice is part of the public contract.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .game import Game, History, check_history
from .machine import MealyMachine, validate_machine
from .probability import InputError, dirac, uniform

Z_99 = 2.5758293035489004  # two-sided 99% normal quantile


@dataclass(frozen=True)
class SampleConfig:
    seed: int
    steps: int
    samples: int

    def __post_init__(self):
        if self.steps < 0:
            raise InputError("steps must be >= 0")
        if self.samples < 1:
            raise InputError("samples must be >= 1")
        if not 0 <= self.seed < 2 ** 64:
            raise InputError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class EmpiricalEstimate:
    event: str
    hits: int
    samples: int

    @property
    def estimate(self) -> float:
        return self.hits / self.samples

    @property
    def std_error(self) -> float:
        p = self.estimate
        return math.sqrt(p * (1 - p) / self.samples)

    @property
    def half_width(self) -> float:
        """Half-width of the 99% normal-approximation interval."""
        return Z_99 * self.std_error

    def within(self, p: float, sigmas: float = 5.0) -> bool:
        """True iff ``p`` lies within ``sigmas`` standard errors of the estimate.

        The standard error is taken at ``p`` itself, so exact 0/1 values demand
        an exact hit count.
        """
        se = math.sqrt(p * (1 - p) / self.samples)
        return abs(self.estimate - p) <= sigmas * se + 1e-12

    def to_json(self) -> dict:
        return {"event": self.event, "hits": self.hits, "samples": self.samples,
                "estimate": self.estimate, "half_width_99": self.half_width}


class _Tables:
    """Cumulative probability tables indexed by integer ids."""

    def __init__(self, game: Game, profile: Mapping[int, MealyMachine]):
        self.states = game.states
        self.actions = game.actions
        self.players = tuple(sorted(profile))
        sid = {s: i for i, s in enumerate(self.states)}
        aid = {a: i for i, a in enumerate(self.actions)}
        S, A = len(self.states), len(self.actions)
        self.owner = np.array([self.players.index(game.owner[s]) for s in self.states])
        self.delta = np.zeros((S, A, S))
        for (s, a), row in game.delta.items():
            for t, p in row.items():
                self.delta[sid[s], aid[a], sid[t]] = float(p)
        self.delta = _cumulative(self.delta)
        self.init, self.next, self.up = [], [], []
        for p in self.players:
            machine = profile[p]
            mid = {m: i for i, m in enumerate(machine.memory)}
            M = len(machine.memory)
            init = np.zeros(M)
            for m, q in machine.init.items():
                init[mid[m]] = float(q)
            nxt = np.zeros((M, S, A))
            for (m, s), row in machine.next_move.items():
                for a, q in row.items():
                    nxt[mid[m], sid[s], aid[a]] = float(q)
            up = np.zeros((M, S, A, M))
            for (m, s, a), row in machine.update.items():
                for n, q in row.items():
                    up[mid[m], sid[s], aid[a], mid[n]] = float(q)
            self.init.append(_cumulative(init))
            self.next.append(_cumulative(nxt))
            self.up.append(_cumulative(up))


def _draw(cols: np.ndarray, rows: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Index of the first cumulative entry exceeding ``u`` in row ``rows`` of the table.

    ``cols`` is the cumulative table flattened to rows and transposed, so
    ``cols[j]`` holds column ``j``; the last column (always 1) is skipped.
    """
    idx = np.zeros(u.shape, dtype=np.int64)
    for col in cols[:-1]:
        idx += u >= np.take(col, rows)
    return idx


def _columns(cum: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(cum.reshape(-1, cum.shape[-1]).T)


def _cumulative(table: np.ndarray) -> np.ndarray:
    """Cumulative sums along the last axis, rescaled so non-empty rows end at exactly 1."""
    cum = np.cumsum(table, axis=-1)
    top = cum[..., -1:]
    return np.divide(cum, top, out=np.zeros_like(cum), where=top > 0)


def _check_profile(game: Game, profile: Mapping[int, MealyMachine]) -> None:
    missing = set(game.players) - set(profile)
    if missing:
        raise InputError(f"profile has no machine for players {sorted(missing)}")
    for p, machine in profile.items():
        if machine.player != p:
            raise InputError(f"machine registered for player {p} belongs to player {machine.player}")
        validate_machine(machine, game).raise_if_invalid(f"machine of player {p}")


def sample_arrays(game: Game, profile: Mapping[int, MealyMachine], init: str, config: SampleConfig):
    """Simulate plays; returns ``(states, actions)`` index arrays.

    ``states`` has shape ``(samples, steps + 1)`` and ``actions`` shape
    ``(samples, steps)``; indices refer to ``game.states`` and ``game.actions``.
    """
    _check_profile(game, profile)
    if init not in game.owner:
        raise InputError(f"unknown initial state {init!r}")
    t = _Tables(game, profile)
    n = config.samples
    S, A = len(t.states), len(t.actions)
    delta = _columns(t.delta)
    nxt = [_columns(c) for c in t.next]
    up = [_columns(c) for c in t.up]
    rng = np.random.Generator(np.random.PCG64(config.seed))
    zero = np.zeros(n, dtype=np.int64)
    state = np.full(n, game.states.index(init), dtype=np.int64)
    mem = [_draw(_columns(cum), zero, rng.random(n)) for cum in t.init]
    states = np.empty((n, config.steps + 1), dtype=np.int64)
    actions = np.empty((n, config.steps), dtype=np.int64)
    states[:, 0] = state
    for k in range(config.steps):
        u = rng.random(n)
        owner = np.take(t.owner, state)
        action = zero
        for i in range(len(t.players)):
            action = np.where(owner == i, _draw(nxt[i], mem[i] * S + state, u), action)
        sa = state * A + action
        for i in range(len(t.players)):
            mem[i] = _draw(up[i], mem[i] * (S * A) + sa, rng.random(n))
        state = _draw(delta, sa, rng.random(n))
        actions[:, k] = action
        states[:, k + 1] = state
    return states, actions


def sample_play(game: Game, profile: Mapping[int, MealyMachine], init: str,
                config: SampleConfig) -> list:
    """Sampled play prefixes with ``config.steps`` actions, as :class:`History` objects."""
    states, actions = sample_arrays(game, profile, init, config)
    S, A = game.states, game.actions
    out = []
    for srow, arow in zip(states.tolist(), actions.tolist()):
        word = tuple((S[srow[k]], A[arow[k]]) for k in range(len(arow)))
        out.append(History(word, S[srow[-1]]))
    return out


def empirical_cylinder_estimate(game: Game, profile: Mapping[int, MealyMachine], init: str,
                                h: History, config: SampleConfig) -> EmpiricalEstimate:
    """Fraction of sampled plays extending ``h``; ``config.steps`` is replaced by ``len(h)``."""
    check_history(game, h)
    cfg = SampleConfig(config.seed, len(h), config.samples)
    states, actions = sample_arrays(game, profile, init, cfg)
    sid = {s: i for i, s in enumerate(game.states)}
    aid = {a: i for i, a in enumerate(game.actions)}
    want_s = np.array([sid[s] for s, _ in h.word] + [sid[h.last]])
    want_a = np.array([aid[a] for _, a in h.word], dtype=np.int64)
    hit = (states == want_s).all(axis=1) & (actions == want_a).all(axis=1)
    return EmpiricalEstimate(str(h), int(hit.sum()), cfg.samples)


def uniform_opponents(game: Game, player: int) -> dict:
    """Memoryless machines playing uniformly at random for every other player."""
    out = {}
    for p in game.players:
        if p == player:
            continue
        owned = game.owned_states(p)
        out[p] = MealyMachine(p, {"u": 1}, {("u", s): uniform(game.enabled[s]) for s in owned},
                              {("u", s, a): dirac("u") for s in game.states for a in game.enabled[s]})
    return out


@dataclass(frozen=True)
class SampleComparison:
    """Two-sample comparison of prefix frequencies of two machines."""

    distinguishable: bool
    history: str | None
    left_hits: int
    right_hits: int
    samples: int
    z: float

    def to_json(self) -> dict:
        return {"verdict": "not-equivalent" if self.distinguishable else "no-difference-detected",
                "history": self.history, "left_hits": self.left_hits, "right_hits": self.right_hits,
                "samples": self.samples, "z": round(self.z, 6)}


def compare_by_sampling(left: MealyMachine, right: MealyMachine, game: Game, init: str,
                        samples: int, seed: int, steps: int = 4, sigmas: float = 5.0) -> SampleComparison:
    """Simulate both machines against uniform opponents and compare prefix frequencies.

    Left uses ``seed`` and right ``seed + 1``.  The prefix with the largest
    two-sample z-score is reported; the machines are declared
    distinguishable when it exceeds ``sigmas``.  This is statistical
    evidence only.
    """
    opp = uniform_opponents(game, left.player)
    S, A = len(game.states), len(game.actions)
    counts = []
    for machine, sd in ((left, seed), (right, (seed + 1) % 2 ** 64)):
        profile = dict(opp)
        profile[machine.player] = machine
        states, actions = sample_arrays(game, profile, init, SampleConfig(sd, steps, samples))
        counts.append(_prefix_counts(states, actions, S, A))
    best = (0.0, None, 0, 0)
    for key in sorted(set(counts[0]) | set(counts[1])):
        x, y = counts[0].get(key, 0), counts[1].get(key, 0)
        p = (x + y) / (2 * samples)
        se = math.sqrt(p * (1 - p) * 2 / samples)
        z = abs(x - y) / samples / se if se > 0 else 0.0
        if z > best[0]:
            best = (z, key, x, y)
    z, key, x, y = best
    text = None
    if key is not None:
        st, ac = key[:steps + 1], key[steps + 1:]
        text = " ".join(t for k in range(steps) for t in (game.states[st[k]], game.actions[ac[k]]))
        text = f"{text} {game.states[st[-1]]}" if steps else game.states[st[-1]]
    return SampleComparison(z > sigmas, text, x, y, samples, z)


def _prefix_counts(states: np.ndarray, actions: np.ndarray, S: int, A: int) -> dict:
    """``{(s0..sk, a0..a(k-1)): count}`` over the sampled rows."""
    steps = actions.shape[1]
    if S * (S * A) ** steps >= 2 ** 63:  # mixed-radix code would overflow
        rows = np.concatenate([states, actions], axis=1)
        keys, freq = np.unique(rows, axis=0, return_counts=True)
        return {tuple(k.tolist()): int(c) for k, c in zip(keys, freq)}
    code = states[:, 0].astype(np.int64)
    for k in range(steps):
        code = (code * A + actions[:, k]) * S + states[:, k + 1]
    keys, freq = np.unique(code, return_counts=True)
    out = {}
    for c, n in zip(keys.tolist(), freq.tolist()):
        st, ac = [], []
        for _ in range(steps):
            c, s = divmod(c, S)
            c, a = divmod(c, A)
            st.append(s)
            ac.append(a)
        st.append(c)
        out[tuple(reversed(st)) + tuple(reversed(ac))] = n
    return out
