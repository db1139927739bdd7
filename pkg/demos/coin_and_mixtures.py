"""A fair coin against a mixture of two machines on the one-state game.

Run with ``python3 demos/coin_and_mixtures.py``.
"""
from fractions import Fraction

from fmstrat import History, action_distribution, cylinder_probability, exact_equivalence, memory_distribution
from fmstrat.witnesses import coin_machine, enumerate_pure_machines, one_state_game, rrd_machine

game = one_state_game()
coin = coin_machine()    # one memory state, tosses a fair coin every round
mixed = rrd_machine()    # half the time a coin, half the time always b

print(game)

# The mixed machine learns from what it played: after every b the
# always-b state becomes more likely.
for k in range(5):
    h = History.parse(" ".join(["s b"] * k + ["s"]))
    mu = memory_distribution(mixed, game, h.word)
    print(k, dict(mu), "P(a) =", action_distribution(mixed, game, h)["a"])

# probability of seeing b forever tends to 1/2
for k in (1, 5, 10, 20):
    h = History.parse(" ".join(["s b"] * k + ["s"]))
    p = cylinder_probability(game, mixed, {}, "s", h)
    print(f"P(Cyl((s b)^{k} s)) = {p} ~ {float(p):.6f}")

# the two already disagree at the very first step
print(exact_equivalence(coin, mixed, game))

# and no pure machine with two memory states imitates the coin
pure = list(enumerate_pure_machines(game, 1, 2))
lengths = sorted({len(exact_equivalence(coin, m, game).history) for m in pure})
print(len(pure), "pure machines, witness lengths", lengths)

assert cylinder_probability(game, coin, {}, "s", History.parse("s a s a s")) == Fraction(1, 4)
