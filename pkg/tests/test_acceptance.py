"""Acceptance criteria 1-9.

Each ``criterion_N`` function returns ``(ok, detail)``.  Under pytest every
criterion is one test and the PASS/FAIL lines are printed in the terminal
summary; ``python3 tests/test_acceptance.py`` prints the same lines directly.
"""
from __future__ import annotations

import itertools
import json
import os
import subprocess
import sys
import tempfile
import time
from fractions import Fraction as F
from pathlib import Path

from fmstrat import (
    Counterexample,
    History,
    StrategyClass,
    action_distribution,
    bounded_depth_check,
    brute_force_memory_distribution,
    classify,
    cylinder_probability,
    exact_equivalence,
    is_consistent,
    lift,
    memory_distribution,
    rdd_to_drd,
    rrr_to_drr,
    rrr_to_rdr,
)
from fmstrat.equivalence import build_linear_representation
from fmstrat import formats
from fmstrat.formats import dumps, game_from_json, layer_from_json, load_json, machine_from_json
from fmstrat.imperfect import check_factoring, check_uniformity, transform_under_layer
from fmstrat.random_instances import CLASSES, random_instance, random_pair
from fmstrat.sampling import SampleConfig, compare_by_sampling, empirical_cylinder_estimate, uniform_opponents
from fmstrat.transforms import rrr_to_rdr_detailed
from fmstrat import witnesses as W

SAMPLES = 100_000
SIGMAS = 5


def within(cls: StrategyClass, promised: str) -> bool:
    """``cls`` is at most as random as ``promised`` in every component."""
    return all(c == "D" or p == "R" for c, p in zip(str(cls), promised))


def _transforms(machine, game):
    """``[(name, output, promised class)]`` for every transformation that applies."""
    out = [("rrr_to_drr", rrr_to_drr(machine, game), "DRR"),
           ("rrr_to_rdr", rrr_to_rdr(machine, game), "RDR")]
    cls = classify(machine)
    if cls.output_tag == "D" and cls.update_tag == "D":
        out.append(("rdd_to_drd", rdd_to_drd(machine, game), "DRD"))
    return out


def _criterion_1_inputs():
    named = ["rrd_witness", "coin_drd", "drr_small", "segment_example", "blowup(2)", "blowup(3)", "blowup_mdp(3)"]
    for name in named:
        game, machine = W.machine_by_name(name)
        yield name, game, machine
    for seed in range(100):
        game, machine = random_instance(seed, max_states=4, max_actions=3, max_memory=4,
                                        cls=CLASSES[seed % len(CLASSES)])
        yield f"random#{seed}", game, machine


def criterion_1():
    failures, checked = [], 0
    for name, game, machine in _criterion_1_inputs():
        for tname, out, promised in _transforms(machine, game):
            checked += 1
            if not within(classify(out), promised):
                failures.append(f"{name}/{tname}: class {classify(out)} not within {promised}")
            elif not exact_equivalence(machine, out, game).equivalent:
                failures.append(f"{name}/{tname}: not equivalent")
    return not failures, f"{checked} transformations checked; " + ("; ".join(failures[:3]) or "all exact-equivalent")


def criterion_2():
    problems = []
    for name, game, machine in _criterion_1_inputs():
        if len(rrr_to_drr(machine, game)) != len(machine) + 1:
            problems.append(f"{name}: drr size")
        bound = len(machine) * (len(game.owned_states(1)) * (len(game.actions) - 1) + 1)
        if len(rrr_to_rdr(machine, game)) > bound:
            problems.append(f"{name}: rdr size above {bound}")
    game, machine = W.machine_by_name("segment_example")
    out, plans = rrr_to_rdr_detailed(machine, game, ["a1", "a2", "a3"])
    if len(out) != 4:
        problems.append(f"segment: {len(out)} states")
    if sorted(out.init.values()) != sorted([F(1, 3), F(1, 6), F(1, 6), F(1, 3)]):
        problems.append(f"segment: init {out.init}")
    if plans["m"].cuts != (0, F(1, 3), F(1, 2), F(2, 3), 1):
        problems.append(f"segment: cuts {plans['m'].cuts}")
    return not problems, "; ".join(problems[:3]) or "size bounds and segment example hold"


def criterion_3():
    problems = []
    for mdp in (False, True):
        got = W.blowup_supports(3, mdp)
        expect = {frozenset(E): frozenset(f"a{k}" for k in {1, 2, 3} - set(E))
                  for r in range(3) for E in itertools.combinations((1, 2, 3), r)}
        if got != expect:
            problems.append(f"mdp={mdp}: supports differ")
        if len(W.distinct_reachable_supports(3, mdp)) < 2 ** 3 - 1:
            problems.append(f"mdp={mdp}: fewer than 7 reachable supports")
    return not problems, "; ".join(problems) or "7 proper subsets realised in G3 and its MDP variant"


def criterion_4():
    game, machine = W.machine_by_name("rrd_witness")
    sb = lambda k: History.parse(" ".join(["s b"] * k + ["s"]))  # noqa: E731
    for k in range(21):
        p = cylinder_probability(game, machine, {}, "s", sb(k))
        if p != F(2 ** k + 1, 2 ** (k + 1)) or abs(p - F(1, 2)) > F(1, 2 ** (k + 1)):
            return False, f"cylinder at k={k}: {p}"
    for k in range(11):
        q = action_distribution(machine, game, sb(k)).get("a")
        if q != F(1, 2 * (2 ** k + 1)):
            return False, f"action probability at k={k}: {q}"
    return True, "closed forms hold for k <= 20 and k <= 10"


def criterion_5():
    game = W.one_state_game()
    if not exact_equivalence(W.ddr_machine(), W.drr_small_machine(), game).equivalent:
        return False, "ddr_witness and drr_small differ"
    cex = exact_equivalence(W.coin_machine(), W.rrd_machine(), game)
    want = Counterexample("s", History.parse("s"), "a", F(1, 2), F(1, 4))
    if cex != want:
        return False, f"coin vs rrd witness: {cex}"
    pure = list(W.enumerate_pure_machines(game, 1, 2))
    equal = [m for m in pure if exact_equivalence(W.coin_machine(), m, game).equivalent]
    if len(pure) != 66 or equal:
        return False, f"{len(pure)} pure machines, {len(equal)} equivalent to the coin"
    return True, "ddr ~ drr_small; coin vs rrd at [s] 1/2 vs 1/4; 66/66 pure machines differ from the coin"


def _empirical_agrees(game, left, right, verdict, seed):
    """Sampling must not contradict ``verdict``."""
    if verdict.equivalent:
        init = game.states[0]
        return not compare_by_sampling(left, right, game, init, SAMPLES, seed, steps=3, sigmas=SIGMAS).distinguishable
    t = min(game.successors(verdict.history.last, verdict.action))
    h = verdict.history.extend(verdict.action, t)
    opp = uniform_opponents(game, left.player)
    exact = [cylinder_probability(game, m, opp, verdict.init, h) for m in (left, right)]
    if exact[0] == exact[1]:
        return False
    for k, m in enumerate((left, right)):
        profile = dict(opp)
        profile[m.player] = m
        est = empirical_cylinder_estimate(game, profile, verdict.init, h, SampleConfig(2 * seed + k, 0, SAMPLES))
        if not est.within(float(exact[k]), SIGMAS):
            return False
    return True


def criterion_6():
    problems, equivalent, words = [], 0, 0
    for seed in range(200):
        kind, game, left, right = random_pair(seed)
        exact = exact_equivalence(left, right, game)
        depth = (build_linear_representation(left, game).dimension
                 + build_linear_representation(right, game).dimension)
        bounded = bounded_depth_check(left, right, game, depth)
        equivalent += exact.equivalent
        if exact.equivalent != bounded.equivalent:
            problems.append(f"seed {seed} ({kind}): exact and bounded disagree")
        elif not _empirical_agrees(game, left, right, exact, seed):
            problems.append(f"seed {seed} ({kind}): sampling contradicts the exact verdict")
        pairs = [(s, a) for s in game.states for a in game.enabled[s]]
        for n in range(7):
            for w in itertools.product(pairs, repeat=n):
                if any(w[i + 1][0] not in game.successors(*w[i]) for i in range(n - 1)):
                    continue
                if not is_consistent(left, game, w):
                    continue
                words += 1
                if memory_distribution(left, game, w) != brute_force_memory_distribution(left, game, w):
                    problems.append(f"seed {seed}: mu differs from brute force at {w}")
                    break
    detail = f"200 pairs ({equivalent} equivalent), {words} consistent words against brute force"
    return not problems, "; ".join(problems[:3]) or detail


def _all_words(game, n_max):
    pairs = [(s, a) for s in game.states for a in game.enabled[s]]
    for n in range(n_max + 1):
        for w in itertools.product(pairs, repeat=n):
            if all(w[i + 1][0] in game.successors(*w[i]) for i in range(n - 1)):
                yield w


def criterion_7():
    problems = []
    drd = [(W.one_state_game(), W.coin_machine())]
    drd += [random_instance(s, 3, 2, 3, cls="DRD") for s in range(30)]
    for game, m in drd:
        for w in _all_words(game, 4):
            if len(memory_distribution(m, game, w)) != 1:
                problems.append(f"DRD mu not Dirac after {w}")
                break
    rrd = [(W.one_state_game(), W.rrd_machine())]
    rrd += [random_instance(s, 3, 2, 3, cls="RRD") for s in range(30)]
    for game, m in rrd:
        for w in _all_words(game, 4):
            if not is_consistent(m, game, w):
                continue
            sizes = [len(memory_distribution(m, game, w[:k])) for k in range(len(w) + 1)]
            if any(b > a for a, b in zip(sizes, sizes[1:])):
                problems.append(f"RRD support grows along {w}: {sizes}")
                break
    for seed in range(50):
        game, m = random_instance(seed, cls=CLASSES[seed % len(CLASSES)])
        ren = {x: f"r{len(m.memory) - i}" for i, x in enumerate(m.memory)}
        states = {s: f"q_{s}" for s in game.states}
        actions = {a: f"b_{a}" for a in game.actions}
        if classify(m.renamed(ren, states, actions)) != classify(m) or classify(m.renamed(ren)) != classify(m):
            problems.append(f"classify not renaming-invariant for seed {seed}")
    return not problems, "; ".join(problems[:3]) or "Dirac mu, monotone supports and renaming invariance hold"


def criterion_8():
    e = W.entry("imperfect_fixture")
    game, layer = e.game, e.layer
    problems = []
    report = check_uniformity(e.machines["obs_rrr"], game, layer, 4)
    if not report.ok:
        problems.append(f"uniformity fails: {report.violations[:1]}")
    jobs = [("rdd_to_drd", rdd_to_drd, "obs_rdd"), ("rrr_to_drr", rrr_to_drr, "obs_rrr"),
            ("rrr_to_rdr", rrr_to_rdr, "obs_rrr")]
    for tname, transform, mname in jobs:
        source = e.machines[mname]
        out = transform_under_layer(transform, source, game, layer)
        lifted_in, lifted_out = lift(source, game, layer), lift(out, game, layer)
        if not exact_equivalence(lifted_in, lifted_out, game).equivalent:
            problems.append(f"{tname}: lifts differ")
        if not check_factoring(lifted_out, game, layer, 4).ok:
            problems.append(f"{tname}: induced strategy does not factor through observations")
        if not within(classify(out), {"rdd_to_drd": "DRD", "rrr_to_drr": "DRR", "rrr_to_rdr": "RDR"}[tname]):
            problems.append(f"{tname}: class {classify(out)}")
    return not problems, "; ".join(problems) or "uniformity at depth 4; three transforms equivalent and factoring"


def _cli(*args, cwd=None) -> bytes:
    env = dict(os.environ, PYTHONHASHSEED="random")
    proc = subprocess.run([sys.executable, "-m", "fmstrat", *args], capture_output=True, cwd=cwd, env=env)
    return proc.stdout + f"exit={proc.returncode}".encode()


CLI_RUNS = [  # (args, expected exit code)
    (("simulate", "rrd_witness", "--init", "s", "--steps", "4", "--samples", "5000", "--seed", "11"), 0),
    (("simulate", "rrd_witness", "--init", "s", "--history", "s b s b s", "--samples", "20000", "--seed", "3"), 0),
    (("equiv", "ddr_witness", "drr_small", "--method", "sample:20000:5"), 0),
    (("equiv", "coin_drd", "rrd_witness", "--method", "sample:20000:5"), 1),
    (("equiv", "coin_drd", "rrd_witness"), 1),
    (("transform", "--kind", "rrr-to-rdr", "drr_small"), 0),
    (("prob", "rrd_witness", "--init", "s", "--history", "s b s b s"), 0),
    (("gallery", "list", "--check"), 0),
]


def criterion_9():
    problems = []
    for args, code in CLI_RUNS:
        first = _cli(*args)
        if first != _cli(*args):
            problems.append(f"output differs: {' '.join(args)}")
        if not first.endswith(f"exit={code}".encode()):
            problems.append(f"unexpected exit: {' '.join(args)}")
    with tempfile.TemporaryDirectory() as tmp:
        a, b = Path(tmp, "a"), Path(tmp, "b")
        for d in (a, b):
            for e in W.gallery():
                out = _cli("gallery", "emit", e.name, "--out", str(d))
                if not out.endswith(b"exit=0"):
                    problems.append(f"emit {e.name} failed")
        files = sorted(p.name for p in a.iterdir())
        if files != sorted(p.name for p in b.iterdir()):
            problems.append("emitted file sets differ")
        for name in files:
            raw = (a / name).read_bytes()
            if raw != (b / name).read_bytes():
                problems.append(f"{name} differs between runs")
            doc = load_json(a / name)
            parse = {"game": game_from_json, "layer": layer_from_json}.get(doc["kind"], machine_from_json)
            obj = parse(doc, name)
            emit = {"game": formats.game_to_json, "layer": formats.layer_to_json}.get(doc["kind"])
            again = emit(obj) if emit else formats.machine_to_json(obj, doc["kind"])
            if dumps(again).encode() != raw:
                problems.append(f"{name} does not round-trip")
    return not problems, "; ".join(problems[:3]) or f"{len(CLI_RUNS)} commands stable; {len(files)} gallery files round-trip"


CRITERIA = [
    (1, "transformation correctness", criterion_1),
    (2, "size bounds", criterion_2),
    (3, "blowup evidence", criterion_3),
    (4, "closed-form probabilities", criterion_4),
    (5, "stated equivalences", criterion_5),
    (6, "oracle triple agreement", criterion_6),
    (7, "class-structure properties", criterion_7),
    (8, "imperfect information", criterion_8),
    (9, "determinism and formats", criterion_9),
]


def _line(n, title, ok, detail, seconds):
    return f"{'PASS' if ok else 'FAIL'} criterion {n} ({title}, {seconds:.1f}s): {detail}"


def _run(n):
    _, title, fn = CRITERIA[n - 1]
    start = time.perf_counter()
    ok, detail = fn()
    line = _line(n, title, ok, detail, time.perf_counter() - start)
    try:
        from conftest import ACCEPTANCE
        ACCEPTANCE.append(line)
    except ImportError:
        pass
    print(line)
    return ok, detail


def test_criterion_1():
    ok, detail = _run(1)
    assert ok, detail


def test_criterion_2():
    ok, detail = _run(2)
    assert ok, detail


def test_criterion_3():
    ok, detail = _run(3)
    assert ok, detail


def test_criterion_4():
    ok, detail = _run(4)
    assert ok, detail


def test_criterion_5():
    ok, detail = _run(5)
    assert ok, detail


def test_criterion_6():
    ok, detail = _run(6)
    assert ok, detail


def test_criterion_7():
    ok, detail = _run(7)
    assert ok, detail


def test_criterion_8():
    ok, detail = _run(8)
    assert ok, detail


def test_criterion_9():
    ok, detail = _run(9)
    assert ok, detail


if __name__ == "__main__":
    results = [_run(n)[0] for n, _, _ in CRITERIA]
    print(json.dumps({"passed": sum(results), "total": len(results)}))
    sys.exit(0 if all(results) else 1)
