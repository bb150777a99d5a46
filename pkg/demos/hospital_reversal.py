"""
Reversing a significant result
==============================

A recovers 90% of the time and B 80%, with a thousand patients each. That
gap is about 6.3 standard deviations. We look for a split into two sub-trials
in which B is ahead in *both*, each at the same standardized level C'.
"""

import math

from invsimpson import (
    aggregate_confidence,
    cprime_ceiling_printed,
    cprime_ceiling_sufficient,
    integerize,
    make_table,
    maximize_reversal,
    rates,
    solve_reversal,
    special_alpha_beta,
    subtrial_confidence,
)
from invsimpson.core import FractionalTable

table = make_table(900, 1000, 800, 1000)
n = table.total_trials
agg = aggregate_confidence(table)
print(f"aggregate: C_AB={agg.c_value:.5f}  z={agg.z:.3f}")

# A hand-made split: good- and poor-shape patients
good = subtrial_confidence(FractionalTable(870, 900, 590, 600), n)
poor = subtrial_confidence(FractionalTable(30, 100, 210, 400), n, part_index=2)
print(f"hand split: C'_1={good.c_prime:.5f}  C'_2={poor.c_prime:.5f}")

# Closed-form split and the level it is guaranteed to support
rp = rates(table)
a, b = special_alpha_beta(rp)
floor = cprime_ceiling_sufficient(rp, a, b)
print(f"special split alpha={a:.6f} beta={b:.6f}, guaranteed C' up to {floor:.5f}")
sol = solve_reversal(table, a, b, 0.9 * floor)
print("at 90% of that:", sol.verified, [round(r.c_prime, 6) for r in sol.realized_confidences])
print(f"(printed closed form gives {cprime_ceiling_printed(rp):.5f}; reference only)")

# Search over all splits
best = maximize_reversal(table)
p = best.plan
print(f"best: alpha={p.alpha:.4f} beta={p.beta:.4f} C'={p.c_prime:.5f} "
      f"({math.sqrt(n) * p.c_prime:.2f} sd in each part)")
for part in best.parts:
    print("   ", tuple(round(x, 2) for x in part.as_tuple()))

split = integerize(best.parts, p.c_prime)
for t, c in zip(split.parts, split.realized_confidences):
    print("   ", t.as_tuple(), f"C'={c.c_prime:.5f}")
