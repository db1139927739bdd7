from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from fmstrat import (
    BOTTOM,
    InputError,
    MealyMachine,
    classify,
    exact_equivalence,
    memory_distribution,
    rdd_to_drd,
    rrr_to_drr,
    rrr_to_rdr,
)
from fmstrat.transforms import (
    SubsetFunctionState,
    rdd_to_drd_detailed,
    reachable_supports,
    reachable_trim,
    rrr_to_rdr_detailed,
    segment_plan,
)
from fmstrat.witnesses import (
    blowup_game,
    blowup_machine,
    coin_machine,
    drr_small_machine,
    one_state_game,
    rrd_machine,
    segment_game,
    segment_machine,
)

from conftest import small_instance

G = one_state_game()


def test_drr_of_rrd_frozen():
    d = rrr_to_drr(rrd_machine(), G)
    assert d.init == {"init": 1}
    assert d.move("init", "s") == {"a": F(1, 4), "b": F(3, 4)}
    assert d.up("init", "s", "a") == {"m1": 1}
    assert d.up("init", "s", "b") == {"m1": F(1, 3), "m2": F(2, 3)}
    assert str(classify(d)) == "DRR"


def test_drr_fresh_name_and_least_fallback():
    m = rrd_machine().renamed({"m1": "init"})
    d = rrr_to_drr(m, G)
    assert "init'" in d.memory and d.init == {"init'": 1}
    # an action no initial state plays: "least" jumps to the first memory state
    never_a = rrd_machine().renamed()
    never_a = type(never_a)(1, {"m2": 1}, never_a.next_move, never_a.update, never_a.memory)
    assert rrr_to_drr(never_a, G, arbitrary="least").up("init", "s", "a") == {"m1": 1}
    assert rrr_to_drr(never_a, G).up("init", "s", "a") == {"m2": 1}


def test_segment_plan_frozen():
    plan = segment_plan(segment_machine(), segment_game(), "m", ["a1", "a2", "a3"])
    assert plan.cuts == (0, F(1, 3), F(1, 2), F(2, 3), 1)
    assert [plan.probability(j) for j in range(len(plan))] == [F(1, 3), F(1, 6), F(1, 6), F(1, 3)]
    assert plan.strategies[0] == {"s1": "a1", "s2": "a1", "s3": "a1"}
    assert plan.strategies[3] == {"s1": "a2", "s2": "a3", "s3": "a3"}
    assert plan.indices("s2", "a2") == [1, 2]
    with pytest.raises(InputError):
        segment_plan(segment_machine(), segment_game(), "m", ["a1", "a2"])


def test_segment_order_changes_plan_not_behaviour():
    g, m = segment_game(), segment_machine()
    lex = rrr_to_rdr(m, g)
    rev = rrr_to_rdr(m, g, ["a3", "a2", "a1"])
    per = rrr_to_rdr(m, g, {"m": ["a2", "a1", "a3"]})
    assert exact_equivalence(lex, rev, g).equivalent
    assert exact_equivalence(lex, per, g).equivalent


def test_rdr_of_coin():
    r, plans = rrr_to_rdr_detailed(coin_machine(), G)
    assert r.init == {"m#1": F(1, 2), "m#2": F(1, 2)}
    assert r.move("m#1", "s") == {"a": 1} and r.move("m#2", "s") == {"b": 1}
    assert plans["m"].cuts == (0, F(1, 2), 1)


def test_rdd_to_drd_blowup_2():
    g = blowup_game(2)
    drd, names = rdd_to_drd_detailed(blowup_machine(2), g)
    assert len(drd) == 4
    start = names[next(iter(drd.init))]
    assert isinstance(start, SubsetFunctionState)
    assert start.alive == ("m1", "m2") and start["m1"] == "m1"
    dead = [f for f in names.values() if not f.alive]
    assert len(dead) == 1 and dead[0]["m1"] == BOTTOM
    assert len(reachable_trim(drd, g)) == 3
    assert set(rdd_to_drd(blowup_machine(2), g, arbitrary="least").memory) == set(drd.memory)


def test_rdd_to_drd_rejects_random_outputs():
    with pytest.raises(InputError):
        rdd_to_drd(coin_machine(), G)


def test_reachable_supports_of_rrd():
    got = reachable_supports(rrd_machine(), G, ["s"])
    assert got == {("s", frozenset({"m1", "m2"})), ("s", frozenset({"m1"}))}
    assert reachable_trim(rrd_machine(), G) is not None
    assert len(reachable_trim(drr_small_machine(), G)) == 3


# --- properties -------------------------------------------------------------------

@given(small_instance())
def test_rrr_to_drr_equivalent(inst):
    game, m = inst
    d = rrr_to_drr(m, game)
    assert len(d) == len(m) + 1 and classify(d).init_tag == "D"
    assert exact_equivalence(m, d, game).equivalent


@given(small_instance())
def test_drr_fallbacks_agree(inst):
    game, m = inst
    assert exact_equivalence(rrr_to_drr(m, game), rrr_to_drr(m, game, arbitrary="least"), game).equivalent


@given(small_instance())
def test_rrr_to_rdr_equivalent_and_bounded(inst):
    game, m = inst
    r, plans = rrr_to_rdr_detailed(m, game)
    assert classify(r).output_tag == "D"
    assert len(r) <= len(m) * (len(game.owned_states(1)) * (len(game.actions) - 1) + 1)
    assert exact_equivalence(m, r, game).equivalent
    for plan in plans.values():
        # every segment strategy agrees with the machine's support
        for j, sigma in enumerate(plan.strategies):
            assert plan.probability(j) > 0
            for s, a in sigma.items():
                assert m.move(plan.memory, s).get(a, 0) > 0


@given(small_instance(), st.randoms(use_true_random=False))
def test_two_orders_equivalent(inst, rnd):
    game, m = inst
    order = list(game.actions)
    rnd.shuffle(order)
    assert exact_equivalence(rrr_to_rdr(m, game), rrr_to_rdr(m, game, order), game).equivalent


@given(small_instance("RDD", max_memory=3))
def test_rdd_to_drd_equivalent(inst):
    game, m = inst
    d = rdd_to_drd(m, game)
    assert classify(d).init_tag == "D" and classify(d).update_tag == "D"
    assert exact_equivalence(m, d, game).equivalent
    assert exact_equivalence(d, rdd_to_drd(m, game, arbitrary="least"), game).equivalent
    assert exact_equivalence(m, reachable_trim(d, game), game).equivalent
    for s in game.states:
        assert len(memory_distribution(d, game, ((s, game.enabled[s][0]),))) == 1


@given(small_instance())
def test_trim_preserves_behaviour(inst):
    game, m = inst
    t = reachable_trim(m, game)
    assert set(t.memory) <= set(m.memory)
    assert exact_equivalence(m, t, game).equivalent


@given(small_instance("RDD", max_memory=3))
def test_trim_orders(inst):
    game, m = inst
    plain = rdd_to_drd(m, game)
    for trim in ("before", "after", "both"):
        t = rdd_to_drd(m, game, trim=trim)
        assert len(t) <= len(plain) or trim == "before"
        assert exact_equivalence(m, t, game).equivalent
    with pytest.raises(InputError):
        rdd_to_drd(m, game, trim="sideways")


@given(small_instance())
def test_segment_plan_invariant(inst):
    game, m = inst
    for mem in m.memory:
        plan = segment_plan(m, game, mem)
        assert plan.cuts[0] == 0 and plan.cuts[-1] == 1
        assert all(x < y for x, y in zip(plan.cuts, plan.cuts[1:]))
        for s in game.owned_states(m.player):
            for a in game.enabled[s]:
                mass = sum((plan.probability(j) for j in plan.indices(s, a)), F(0))
                assert mass == m.move(mem, s).get(a, 0)


def test_dirac_outputs_give_one_segment_each():
    from fmstrat.witnesses import ddr_machine
    m = ddr_machine()
    r = rrr_to_rdr(m, G)
    assert len(r) == len(m)
    assert r.renamed({f"{x}#1": x for x in m.memory}) == m


def test_trim_drops_unreachable_and_keeps_reachable():
    m = drr_small_machine()
    nxt = {**m.next_move, ("ghost", "s"): {"a": 1}}
    up = {**m.update, ("ghost", "s", "a"): {"ghost": 1}, ("ghost", "s", "b"): {"ghost": 1}}
    extra = MealyMachine(1, m.init, nxt, up)
    assert "ghost" in extra.memory
    assert reachable_trim(extra, G) == m
    assert reachable_trim(m, G) is m
