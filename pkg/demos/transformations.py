"""The three class-changing constructions on small inputs.

Run with ``python3 demos/transformations.py``.
"""
from fmstrat import classify, exact_equivalence, rrr_to_drr
from fmstrat.transforms import rdd_to_drd_detailed, reachable_trim, rrr_to_rdr_detailed
from fmstrat.witnesses import (
    blowup_game,
    blowup_machine,
    distinct_reachable_supports,
    one_state_game,
    rrd_machine,
    segment_game,
    segment_machine,
)

# Randomised initialisation moves into a single fresh state.
g = one_state_game()
m = rrd_machine()
d = rrr_to_drr(m, g)
print(classify(m), "->", classify(d), len(m), "->", len(d), "states")
print("first move of the new state:", d.move("init", "s"))
print(exact_equivalence(m, d, g))

# Randomised outputs become a random choice of pure memoryless strategy.
g, m = segment_game(), segment_machine()
r, plans = rrr_to_rdr_detailed(m, g, ["a1", "a2", "a3"])
plan = plans["m"]
print("cuts", [str(x) for x in plan.cuts])
for j, sigma in enumerate(plan.strategies):
    print(f"  segment {j + 1}  p={plan.probability(j)}  {sigma}")
print(classify(r), exact_equivalence(m, r, g))

# Removing the initial randomisation of a pure-update machine costs
# exponentially many states: one per surviving subset of initial states.
print(" n  |M|  |DRD|  trimmed  supports at s*")
for n in range(1, 6):
    game = blowup_game(n)
    drd, names = rdd_to_drd_detailed(blowup_machine(n), game)
    trimmed = reachable_trim(drd, game)
    print(f"{n:2d}  {n:3d}  {len(drd):5d}  {len(trimmed):7d}  {len(distinct_reachable_supports(n)):5d}")
