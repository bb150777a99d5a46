"""
The classical Simpson reversal
==============================

Two trials each favour treatment A, yet pooling them favours B. The
prototype below puts A's failures at rate a and B's at rate b, and gives
the arms unequal sample sizes in the two trials.
"""

from fractions import Fraction

from invsimpson import prototype_reversal_predicted, prototype_reversal_threshold, simpson_check
from invsimpson.paradox import prototype_tables

a, b = Fraction(1, 4), Fraction(3, 10)
t1, t2 = prototype_tables(a, b, 80, 200)
print("trial 1:", t1.as_tuple())
print("trial 2:", t2.as_tuple())

rep = simpson_check(t1, t2)
print("part directions:", [d.value for d in rep.part_directions])
print("merged direction:", rep.merged_direction.value)
print("reversal:", rep.reversal)

# None of the three claims is especially convincing on its own
for name, res in zip(("trial 1", "trial 2"), rep.part_confidences):
    print(f"{name}: Pr(A >= B) ~ {res.prob_superiority:.3f}")
print(f"merged : Pr(A >= B) ~ {rep.merged_confidence.prob_superiority:.5f}")

# The reversal happens exactly when N_1 < threshold * N_2
ratio = prototype_reversal_threshold(a, b)
print(f"threshold {ratio:.3f}")
for n1 in (80, 159, 160, 200):
    print(n1, prototype_reversal_predicted(a, b, n1, 200))
