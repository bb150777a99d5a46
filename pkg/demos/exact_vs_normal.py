"""
Exact and large-sample comparisons
==================================

With a flat prior on each success rate, Pr(p_A >= p_B) has a finite-sum
closed form. Here it is set beside the normal approximation and the
independent oracles as the sample grows.
"""

import numpy as np

from invsimpson import make_table, prob_a_beats_b_exact, prob_a_beats_b_normal
from invsimpson.oracle import prob_a_beats_b_montecarlo, prob_a_beats_b_quadrature

print(f"{'N':>6} {'exact':>10} {'normal':>10} {'gap':>10}")
for n in (20, 80, 320, 1280, 5120):
    t = make_table(int(0.6 * n), n, int(0.5 * n), n)
    e = prob_a_beats_b_exact(t)
    z = prob_a_beats_b_normal(t).prob_superiority
    print(f"{n:>6} {e:10.6f} {z:10.6f} {abs(e - z):10.2e}")

t = make_table(10, 20, 5, 20)
print("quadrature:", prob_a_beats_b_quadrature(t).value)
print("exact     :", prob_a_beats_b_exact(t))
mc = prob_a_beats_b_montecarlo(t, 10**6, seed=1)
print(f"monte carlo: {mc.value:.5f} +/- {mc.error_estimate:.5f}")

# Equal sample sizes, varying lead: the exact probability against the z-score
z = np.array([prob_a_beats_b_normal(make_table(50 + k, 100, 50, 100)).z for k in range(1, 6)])
print("z for leads 1..5 of 100:", np.round(z, 3))
