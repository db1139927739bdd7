"""Observation-based machines on a game where player 1 cannot see everything.

Run with ``python3 demos/observations.py``.
"""
from fmstrat import check_factoring, check_uniformity, exact_equivalence, lift, observation_game, rrr_to_rdr
from fmstrat.imperfect import transform_under_layer
from fmstrat.witnesses import (
    hidden_action_layer,
    hidden_action_machine,
    imperfect_game,
    imperfect_layer,
    imperfect_rrr_machine,
)

game, layer = imperfect_game(), imperfect_layer()
print(observation_game(game, layer))

m = imperfect_rrr_machine()
rep = check_uniformity(m, game, layer, 4)
print("uniform:", rep.ok, "words:", rep.words_checked)

# transforming over observation letters keeps the strategy observation-based
r = transform_under_layer(rrr_to_rdr, m, game, layer)
print(exact_equivalence(lift(m, game, layer), lift(r, game, layer), game))
print("factors:", check_factoring(lift(r, game, layer), game, layer, 4).ok)

# if x and y look alike the memory can no longer be read off the observations
bad = check_uniformity(hidden_action_machine(), game, hidden_action_layer(), 2, strict=False)
print("hidden actions:", bad.ok, bad.violations[0])
