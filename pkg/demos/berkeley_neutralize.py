"""
Erasing a difference by splitting the data
==========================================

A 41% vs 29% admission gap is split into two "departments". In each,
both groups are admitted at the same rate, so the gap vanishes in both parts.
"""

from invsimpson import make_table, neutralize, neutralizing_split, simpson_check, suggest_lambda_mu
from invsimpson.decompose import integerize

table = make_table(41, 100, 29, 100)

alpha, beta = neutralizing_split(table, 0.2, 0.5)
print(f"share of A in part 1: {alpha}, share of B in part 1: {beta}")
p1, p2 = neutralize(table, 0.2, 0.5)
print("part 1:", p1.as_tuple())
print("part 2:", p2.as_tuple())

# integral here, so rounding changes nothing
t1, t2 = integerize((p1, p2)).parts
rep = simpson_check(t1, t2)
print("part directions:", [d.value for d in rep.part_directions], "merged:", rep.merged_direction.value)

# The mid-point choice is harmless-looking too, but needs rounding
lam, mu = suggest_lambda_mu(table)
split = integerize(neutralize(table, lam, mu))
print(f"lambda={lam}, mu={mu}:", [t.as_tuple() for t in split.parts])
print("residual C'_i after rounding:", [round(c.c_prime, 5) for c in split.realized_confidences])
