"""Gallery of the concrete games and machines used as witnesses.

Every entry bundles a game, named machines and a list of :class:`Fact`
objects: executable claims with a short pointer to where the claim comes
from.  ``run_facts(entry)`` evaluates them; the test-suite requires all of
them to hold.

Machines that the source figures draw partially (edges never taken) are
completed for totality: unused update rows become Dirac self-loops, except
in ``ddr_witness`` where they are uniform over all memory states.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .equivalence import Counterexample, cylinder_probability, exact_equivalence
from .game import Game, History, enumerate_histories, parse_word, validate_game
from .imperfect import ObservationLayer, check_uniformity, validate_layer
from .machine import (
    MealyMachine,
    action_distribution,
    brute_force_memory_distribution,
    classify,
    is_consistent,
    memory_distribution,
)
from .probability import InputError, dirac, uniform
from .transforms import reachable_trim, rdd_to_drd_detailed, rrr_to_drr, rrr_to_rdr_detailed

F = Fraction


@dataclass(frozen=True)
class Fact:
    claim: str
    source: str
    check: Callable[[], bool] = field(compare=False, repr=False)


@dataclass(frozen=True)
class GalleryEntry:
    name: str
    game: Game
    machines: dict
    facts: tuple = ()
    layer: ObservationLayer | None = None
    note: str = ""


def run_facts(entry: GalleryEntry) -> list:
    """``[(fact, passed)]`` for every fact of the entry."""
    out = []
    for fact in entry.facts:
        try:
            ok = bool(fact.check())
        except Exception:  # a crashing fact is a failing fact
            ok = False
        out.append((fact, ok))
    return out


# --- games -----------------------------------------------------------------

def one_state_game() -> Game:
    """One state ``s`` of player 1 with self-loops ``a`` and ``b``."""
    return Game({"s": 1}, {"s": ["a", "b"]}, {("s", "a"): {"s": 1}, ("s", "b"): {"s": 1}})


def _self_loops(memory, states_actions) -> dict:
    return {(m, s, a): dirac(m) for m in memory for s, a in states_actions}


# --- machines on the one-state game ---------------------------------------

def coin_machine() -> MealyMachine:
    """Single memory state tossing a fair coin between ``a`` and ``b``."""
    return MealyMachine(1, {"m": 1}, {("m", "s"): {"a": F(1, 2), "b": F(1, 2)}},
                        _self_loops(["m"], [("s", "a"), ("s", "b")]))


def rrd_machine() -> MealyMachine:
    """Uniform choice between a coin-tossing state ``m1`` and an always-``b`` state ``m2``."""
    up = _self_loops(["m1", "m2"], [("s", "a"), ("s", "b")])
    return MealyMachine(1, {"m1": F(1, 2), "m2": F(1, 2)},
                        {("m1", "s"): {"a": F(1, 2), "b": F(1, 2)}, ("m2", "s"): {"b": 1}}, up)


def drr_small_machine() -> MealyMachine:
    up = _self_loops(["m1", "m2", "m3"], [("s", "a"), ("s", "b")])
    up[("m1", "s", "b")] = {"m2": F(1, 2), "m3": F(1, 2)}
    up[("m2", "s", "a")] = dirac("m1")
    up[("m2", "s", "b")] = dirac("m2")
    return MealyMachine(1, {"m1": 1},
                        {("m1", "s"): {"b": 1}, ("m2", "s"): {"a": F(1, 2), "b": F(1, 2)},
                         ("m3", "s"): {"b": 1}}, up)


def ddr_machine() -> MealyMachine:
    mem = ["m1", "(m2,a)", "(m2,b)", "m3"]
    up = {(m, "s", a): uniform(mem) for m in mem for a in ("a", "b")}
    up[("m1", "s", "b")] = {"(m2,b)": F(1, 4), "(m2,a)": F(1, 4), "m3": F(1, 2)}
    up[("(m2,a)", "s", "a")] = dirac("m1")
    up[("(m2,b)", "s", "b")] = {"(m2,a)": F(1, 2), "(m2,b)": F(1, 2)}
    up[("m3", "s", "b")] = dirac("m3")
    nxt = {("m1", "s"): {"b": 1}, ("(m2,a)", "s"): {"a": 1}, ("(m2,b)", "s"): {"b": 1}, ("m3", "s"): {"b": 1}}
    return MealyMachine(1, {"m1": 1}, nxt, up, tuple(mem))


def constant_machine(action: str) -> MealyMachine:
    return MealyMachine(1, {"m": 1}, {("m", "s"): {action: 1}},
                        _self_loops(["m"], [("s", "a"), ("s", "b")]))


# --- segment example ----------------------------------------------------------

def segment_game() -> Game:
    """Three player-1 states with actions ``a1..a3``; moves go uniformly anywhere."""
    states = ["s1", "s2", "s3"]
    acts = ["a1", "a2", "a3"]
    return Game({s: 1 for s in states}, {s: acts for s in states},
                {(s, a): uniform(states) for s in states for a in acts})


def segment_machine() -> MealyMachine:
    nxt = {("m", "s1"): {"a1": F(1, 2), "a2": F(1, 2)},
           ("m", "s2"): {"a1": F(1, 3), "a2": F(1, 3), "a3": F(1, 3)},
           ("m", "s3"): {"a1": F(1, 3), "a2": F(1, 6), "a3": F(1, 2)}}
    up = _self_loops(["m"], [(s, a) for s in ("s1", "s2", "s3") for a in ("a1", "a2", "a3")])
    return MealyMachine(1, {"m": 1}, nxt, up)


# --- blowup family --------------------------------------------------------------

def _idx(n: int) -> range:
    if n < 1:
        raise InputError("blowup needs n >= 1")
    return range(1, n + 1)


def blowup_game(n: int, mdp: bool = False) -> Game:
    """States ``s1..sn``, ``s*`` of player 1 and the hub ``t``.

    In the game version ``t`` belongs to player 2, who picks ``a_k`` to go
    to ``s_k`` or ``b`` to go to ``s*``.  In the MDP version ``t`` belongs to
    player 1, enables only ``b`` and moves uniformly to ``s1..sn, s*``.
    """
    S = [f"s{k}" for k in _idx(n)]
    A = [f"a{k}" for k in _idx(n)]
    owner = {s: 1 for s in S + ["s*"]}
    enabled = {f"s{k}": [f"a{k}", "b"] for k in _idx(n)}
    delta = {}
    for k in _idx(n):
        delta[(f"s{k}", f"a{k}")] = dirac("t")
        delta[(f"s{k}", "b")] = dirac("t")
    enabled["s*"] = A
    for a in A:
        delta[("s*", a)] = dirac("s*")
    if mdp:
        owner["t"] = 1
        enabled["t"] = ["b"]
        delta[("t", "b")] = uniform(S + ["s*"])
    else:
        owner["t"] = 2
        enabled["t"] = A + ["b"]
        for k in _idx(n):
            delta[("t", f"a{k}")] = dirac(f"s{k}")
        delta[("t", "b")] = dirac("s*")
    return Game(owner, enabled, delta)


def blowup_machine(n: int, mdp: bool = False) -> MealyMachine:
    """Memory ``m1..mn`` drawn uniformly and never changed; ``m_k`` plays ``a_k`` only at ``s_k`` and ``s*``."""
    game = blowup_game(n, mdp)
    mem = [f"m{k}" for k in _idx(n)]
    nxt = {}
    for k in _idx(n):
        m = f"m{k}"
        for j in _idx(n):
            nxt[(m, f"s{j}")] = dirac(f"a{k}" if j == k else "b")
        nxt[(m, "s*")] = dirac(f"a{k}")
        if mdp:
            nxt[(m, "t")] = dirac("b")
    up = {(m, s, a): dirac(m) for m in mem for s in game.states for a in game.enabled[s]}
    return MealyMachine(1, uniform(mem), nxt, up)


def subset_history(n: int, E, mdp: bool = False) -> History:
    """A history from ``t`` that visits ``s_k`` and plays ``b`` for ``k`` in ``E``, then reaches ``s*``."""
    tokens = ["t"]
    for k in sorted(E):
        tokens += ["b" if mdp else f"a{k}", f"s{k}", "b", "t"]
    tokens += ["b", "s*"]
    return History.of(*tokens)


def blowup_supports(n: int, mdp: bool = False) -> dict:
    """For each proper subset E of ``1..n``: the next-move support at ``s*`` after ``subset_history``.

    Supports are read off the trimmed DRD machine obtained from ``M_n``.
    """
    game = blowup_game(n, mdp)
    drd, _ = rdd_to_drd_detailed(blowup_machine(n, mdp), game)
    drd = reachable_trim(drd, game)
    out = {}
    for r in range(n):
        for E in itertools.combinations(range(1, n + 1), r):
            h = subset_history(n, E, mdp)
            mu = memory_distribution(drd, game, h.word)
            (b,) = mu
            out[frozenset(E)] = frozenset(drd.move(b, "s*"))
    return out


def distinct_reachable_supports(n: int, mdp: bool = False) -> set:
    """Next-move supports at ``s*`` over all memory states of the trimmed DRD machine."""
    game = blowup_game(n, mdp)
    drd = reachable_trim(rdd_to_drd_detailed(blowup_machine(n, mdp), game)[0], game)
    return {frozenset(drd.move(b, "s*")) for b in drd.memory}


# --- imperfect information fixture -----------------------------------------------

def imperfect_game() -> Game:
    """Player 2 at ``t`` secretly picks ``u1`` or ``u2``; player 1 cannot tell them apart."""
    owner = {"t": 2, "u1": 1, "u2": 1, "v": 1}
    enabled = {"t": ["c", "d"], "u1": ["x", "y"], "u2": ["x", "y"], "v": ["x", "z"]}
    delta = {("t", "c"): dirac("u1"), ("t", "d"): dirac("u2"),
             ("u1", "x"): dirac("t"), ("u1", "y"): dirac("v"),
             ("u2", "x"): dirac("v"), ("u2", "y"): dirac("t"),
             ("v", "x"): dirac("t"), ("v", "z"): {"u1": F(1, 2), "u2": F(1, 2)}}
    return Game(owner, enabled, delta)


def imperfect_layer() -> ObservationLayer:
    return ObservationLayer(1, {"t": "ot", "u1": "ou", "u2": "ou", "v": "ov"},
                            {"c": "opp", "d": "opp", "x": "x", "y": "y", "z": "z"})


def hidden_action_layer() -> ObservationLayer:
    """Breaks visibility: player 1 sees ``x`` and ``y`` as the same letter."""
    return ObservationLayer(1, {"t": "ot", "u1": "ou", "u2": "ou", "v": "ov"},
                            {"c": "opp", "d": "opp", "x": "xy", "y": "xy", "z": "z"})


def imperfect_rrr_machine() -> MealyMachine:
    """Observation-based machine with randomised initialisation, outputs and updates."""
    nxt = {("p", "ou"): {"x": F(2, 3), "y": F(1, 3)}, ("q", "ou"): {"x": F(1, 4), "y": F(3, 4)},
           ("p", "ov"): {"x": 1}, ("q", "ov"): {"x": F(1, 2), "z": F(1, 2)}}
    up = {("p", "ot", "opp"): dirac("p"), ("q", "ot", "opp"): {"p": F(1, 3), "q": F(2, 3)},
          ("p", "ou", "x"): uniform("pq"), ("q", "ou", "x"): uniform("pq"),
          ("p", "ou", "y"): dirac("q"), ("q", "ou", "y"): dirac("p"),
          ("p", "ov", "x"): dirac("p"), ("q", "ov", "x"): dirac("q"),
          ("p", "ov", "z"): {"p": F(1, 4), "q": F(3, 4)}, ("q", "ov", "z"): {"p": F(1, 4), "q": F(3, 4)}}
    return MealyMachine(1, {"p": F(1, 2), "q": F(1, 2)}, nxt, up)


def imperfect_rdd_machine() -> MealyMachine:
    nxt = {("p", "ou"): dirac("x"), ("q", "ou"): dirac("y"), ("p", "ov"): dirac("x"), ("q", "ov"): dirac("z")}
    up = {(m, o, x): dirac(m) for m in "pq" for o, x in
          [("ot", "opp"), ("ov", "x"), ("ov", "z"), ("ou", "x"), ("ou", "y")]}
    up[("p", "ou", "x")] = dirac("q")
    up[("q", "ou", "y")] = dirac("p")
    return MealyMachine(1, {"p": F(1, 2), "q": F(1, 2)}, nxt, up)


def hidden_action_machine() -> MealyMachine:
    """Plays ``x`` from ``p`` and ``y`` from ``q``; under the hidden layer mu depends on the hidden action."""
    nxt = {("p", "ou"): dirac("x"), ("q", "ou"): dirac("y"), ("p", "ov"): dirac("x"), ("q", "ov"): dirac("x")}
    up = {(m, o, x): dirac(m) for m in "pq" for o, x in [("ot", "opp"), ("ov", "x"), ("ov", "z"), ("ou", "xy")]}
    return MealyMachine(1, {"p": F(1, 2), "q": F(1, 2)}, nxt, up)


# --- support traces and pure machines -----------------------------------------------

def support_size_trace(machine: MealyMachine, game: Game, w) -> list:
    """``|supp(mu)|`` after each prefix of ``w``, starting with the empty word."""
    w = parse_word(w) if isinstance(w, str) else tuple(w)
    if not is_consistent(machine, game, w):
        raise InputError("word is not consistent with the machine")
    return [len(memory_distribution(machine, game, w[:k])) for k in range(len(w) + 1)]


def _canonical_pure(player, mem, init, nxt, up) -> tuple:
    best = None
    for perm in itertools.permutations(range(len(mem))):
        r = dict(zip(mem, (mem[i] for i in perm)))
        key = (r[init],
               tuple(sorted((r[m], s, a) for (m, s), a in nxt.items())),
               tuple(sorted((r[m], s, a, r[n]) for (m, s, a), n in up.items())))
        if best is None or key < best:
            best = key
    return best


def enumerate_pure_machines(game: Game, player: int, max_states: int):
    """Every DDD machine with 1..``max_states`` memory states, up to renaming of memory."""
    if max_states > 3:
        raise InputError("enumerate_pure_machines is limited to max_states <= 3")
    owned = game.owned_states(player)
    pairs = [(s, a) for s in game.states for a in game.enabled[s]]
    for k in range(1, max_states + 1):
        mem = tuple(f"m{i}" for i in range(k))
        out_slots = [(m, s) for m in mem for s in owned]
        up_slots = [(m, s, a) for m in mem for s, a in pairs]
        seen = set()
        for init in mem:
            for outs in itertools.product(*(game.enabled[s] for _, s in out_slots)):
                nxt = dict(zip(out_slots, outs))
                for ups in itertools.product(mem, repeat=len(up_slots)):
                    upd = dict(zip(up_slots, ups))
                    key = _canonical_pure(player, mem, init, nxt, upd)
                    if key in seen:
                        continue
                    seen.add(key)
                    yield MealyMachine(player, dirac(init), {x: dirac(a) for x, a in nxt.items()},
                                       {x: dirac(n) for x, n in upd.items()}, mem)


# --- entries --------------------------------------------------------------------------

def _h(text: str) -> History:
    return History.parse(text)


def _sb(k: int, tail: str = "s") -> History:
    return _h(" ".join(["s b"] * k + [tail]))


def _entry_one_state() -> GalleryEntry:
    g = one_state_game()
    facts = (
        Fact("the one-state game is well formed", "figure: single state, two actions", lambda: validate_game(g).ok),
        Fact("histories of at most one action from s are s, s a s, s b s", "derived",
             lambda: [str(h) for h in enumerate_histories(g, "s", 1)] == ["s", "s a s", "s b s"]),
    )
    return GalleryEntry("one_state_game", g, {"always_a": constant_machine("a"), "always_b": constant_machine("b")},
                        facts)


def _entry_coin() -> GalleryEntry:
    g, m = one_state_game(), coin_machine()
    pure = lambda: list(enumerate_pure_machines(g, 1, 2))  # noqa: E731
    facts = (
        Fact("the coin machine is DRD", "figure: behavioural witness", lambda: str(classify(m)) == "DRD"),
        Fact("the coin plays a and b with probability 1/2 each", "figure: coin labels",
             lambda: action_distribution(m, g, _h("s")) == {"a": F(1, 2), "b": F(1, 2)}),
        Fact("P(Cyl(s a s a s)) = 1/4", "lemma: RDD strictly inside DRD",
             lambda: cylinder_probability(g, m, {}, "s", _h("s a s a s")) == F(1, 4)),
        Fact("66 pure machines with at most 2 memory states exist on the one-state game", "derived",
             lambda: len(pure()) == 66),
        Fact("no pure machine with at most 2 memory states is equivalent to the coin",
             "lemma: no outcome-equivalent RDD strategy",
             lambda: all(isinstance(exact_equivalence(m, p, g), Counterexample) for p in pure())),
    )
    return GalleryEntry("coin_drd", g, {"coin": m}, facts)


def _entry_rrd() -> GalleryEntry:
    g, m = one_state_game(), rrd_machine()
    facts = (
        Fact("the two-state machine is RRD", "figure: DRD strictly inside RRD", lambda: str(classify(m)) == "RRD"),
        Fact("mu after (s b) is {m1: 1/3, m2: 2/3}", "lemma: DRD strictly inside RRD, k = 1",
             lambda: memory_distribution(m, g, parse_word("s b")) == {"m1": F(1, 3), "m2": F(2, 3)}),
        Fact("the brute-force oracle agrees after (s b)", "derived",
             lambda: brute_force_memory_distribution(m, g, parse_word("s b")) == {"m1": F(1, 3), "m2": F(2, 3)}),
        Fact("sigma((s b)^k s)(a) = 1/(2(2^k+1)) for k <= 10", "lemma: DRD strictly inside RRD",
             lambda: all(action_distribution(m, g, _sb(k))["a"] == F(1, 2 * (2 ** k + 1)) for k in range(11))),
        Fact("P(Cyl((s b)^k s)) = (2^k+1)/2^(k+1) for k <= 20", "derived from the per-step values",
             lambda: all(cylinder_probability(g, m, {}, "s", _sb(k)) == F(2 ** k + 1, 2 ** (k + 1))
                         for k in range(21))),
        Fact("rrr_to_drr adds one state whose first move is {a: 1/4, b: 3/4}", "theorem: RRR to DRR",
             lambda: rrr_to_drr(m, g).move("init", "s") == {"a": F(1, 4), "b": F(3, 4)}),
        Fact("support sizes along (s b)(s b) are 2, 2, 2", "lemma: DDR not inside RRD",
             lambda: support_size_trace(m, g, "s b s b") == [2, 2, 2]),
        Fact("support sizes along (s a) are 2, 1", "lemma: DDR not inside RRD",
             lambda: support_size_trace(m, g, "s a") == [2, 1]),
        Fact("coin and the two-state machine first differ at s: 1/2 against 1/4", "derived",
             lambda: exact_equivalence(coin_machine(), m, g)
             == Counterexample("s", _h("s"), "a", F(1, 2), F(1, 4))),
    )
    return GalleryEntry("rrd_witness", g, {"rrd": m}, facts)


def _entry_ddr() -> GalleryEntry:
    g, m = one_state_game(), ddr_machine()
    facts = (
        Fact("the four-state machine is DDR", "figure: outcome-equivalent DDR/DRR pair",
             lambda: str(classify(m)) == "DDR"),
        Fact("it is outcome-equivalent to drr_small", "figure: outcome-equivalent DDR/DRR pair",
             lambda: exact_equivalence(m, drr_small_machine(), g).equivalent),
        Fact("rrr_to_rdr of drr_small yields a 4-state DDR machine equivalent to it", "theorem: RRR to RDR",
             lambda: (lambda r: len(r) == 4 and str(classify(r)) == "DDR" and exact_equivalence(r, m, g).equivalent)(
                 rrr_to_rdr_detailed(drr_small_machine(), g)[0])),
    )
    return GalleryEntry("ddr_witness", g, {"ddr": m}, facts,
                        note="unused update rows are uniform over the four memory states")


def _entry_drr() -> GalleryEntry:
    g, m = one_state_game(), drr_small_machine()
    facts = (
        Fact("the three-state machine is DRR", "figure: smaller RRR-equivalent machine",
             lambda: str(classify(m)) == "DRR"),
        Fact("mu after (s b) is {m2: 1/2, m3: 1/2}", "figure: update split from m1",
             lambda: brute_force_memory_distribution(m, g, parse_word("s b")) == {"m2": F(1, 2), "m3": F(1, 2)}),
        Fact("mu(m2) = 1/3 after w (s b)(s b) for w = s b s a", "lemma: DDR not inside RRD, k = 2",
             lambda: memory_distribution(m, g, parse_word("s b s a s b s b")).get("m2") == F(1, 3)),
    )
    return GalleryEntry("drr_small", g, {"drr": m}, facts)


def _entry_segment() -> GalleryEntry:
    g, m = segment_game(), segment_machine()

    def plan():
        return rrr_to_rdr_detailed(m, g, ["a1", "a2", "a3"])

    facts = (
        Fact("cut points are 0, 1/3, 1/2, 2/3, 1", "example: cumulative cut points",
             lambda: plan()[1]["m"].cuts == (0, F(1, 3), F(1, 2), F(2, 3), 1)),
        Fact("the output has 4 memory states", "example: cumulative cut points", lambda: len(plan()[0]) == 4),
        Fact("initial distribution is 1/3, 1/6, 1/6, 1/3", "example: cumulative cut points",
             lambda: plan()[0].init == {"m#1": F(1, 3), "m#2": F(1, 6), "m#3": F(1, 6), "m#4": F(1, 3)}),
        Fact("the second segment plays a1 at s1 and a2 at s2, s3", "example: second memoryless strategy",
             lambda: plan()[1]["m"].strategies[1] == {"s1": "a1", "s2": "a2", "s3": "a2"}),
    )
    return GalleryEntry("segment_example", g, {"segment": m}, facts,
                        note="transitions are uniform over the three states; only the machine is prescribed")


def blowup(n: int, mdp: bool = False) -> GalleryEntry:
    g, m = blowup_game(n, mdp), blowup_machine(n, mdp)
    name = f"blowup_mdp({n})" if mdp else f"blowup({n})"
    allm = frozenset(range(1, n + 1))
    facts = (
        Fact(f"the game has {n + 2} states and the machine {n} memory states", "lemma: exponential blowup",
             lambda: len(g.states) == n + 2 and len(m) == n),
        Fact("the machine is RDD", "lemma: exponential blowup", lambda: str(classify(m)) == "RDD"),
        Fact(f"each of the {2 ** n - 1} proper subsets E yields support {{a_m : m not in E}} at s*",
             "lemma: exponential blowup",
             lambda: {E: S for E, S in blowup_supports(n, mdp).items()}
             == {E: frozenset(f"a{k}" for k in allm - E) for E in blowup_supports(n, mdp)}
             and len(blowup_supports(n, mdp)) == 2 ** n - 1),
    )
    return GalleryEntry(name, g, {"rdd": m}, facts)


def blowup_mdp(n: int) -> GalleryEntry:
    return blowup(n, mdp=True)


def _entry_imperfect() -> GalleryEntry:
    g, layer = imperfect_game(), imperfect_layer()
    facts = (
        Fact("the layer satisfies the visible-action rules", "constructed fixture",
             lambda: validate_layer(layer, g).ok),
        Fact("mu depends only on observations up to depth 4", "lemma: uniformity under visible actions",
             lambda: check_uniformity(imperfect_rrr_machine(), g, layer, 4).ok),
        Fact("hiding x and y breaks uniformity", "constructed counter-example",
             lambda: not check_uniformity(hidden_action_machine(), g, hidden_action_layer(), 2, strict=False).ok),
    )
    return GalleryEntry("imperfect_fixture", g, {"obs_rrr": imperfect_rrr_machine(), "obs_rdd": imperfect_rdd_machine()},
                        facts, layer=layer, note="constructed for this library; not taken from a figure")


def gallery() -> list:
    return [
        _entry_one_state(), _entry_coin(), _entry_rrd(), _entry_ddr(), _entry_drr(), _entry_segment(),
        blowup(2), blowup(3), blowup_mdp(2), blowup_mdp(3), _entry_imperfect(),
    ]


def entry(name: str) -> GalleryEntry:
    """Look up an entry; ``blowup(n)`` and ``blowup_mdp(n)`` accept any ``n >= 1``."""
    for e in gallery():
        if e.name == name:
            return e
    for prefix, mdp in (("blowup_mdp(", True), ("blowup(", False)):
        if name.startswith(prefix) and name.endswith(")"):
            try:
                return blowup(int(name[len(prefix):-1]), mdp)
            except ValueError:
                break
    raise InputError(f"unknown gallery entry {name!r}")


def machine_by_name(name: str):
    """``(game, machine)`` for an entry name (its first machine) or ``entry/machine``."""
    ename, _, mname = name.partition("/")
    e = entry(ename)
    if not e.machines:
        raise InputError(f"gallery entry {ename!r} has no machine")
    if not mname:
        mname = next(iter(e.machines))
    if mname not in e.machines:
        raise InputError(f"entry {ename!r} has no machine {mname!r}")
    return e.game, e.machines[mname]
