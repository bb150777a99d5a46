"""Independent brute-force checks.

These routines recompute quantities from :mod:`invsimpson.bayes` and
:mod:`invsimpson.decompose` by unrelated means: nested quadrature built on
SciPy's special functions, exact rational sums, seeded posterior sampling,
and an exhaustive lattice sweep. They are slower than the main code paths
and intended for verification.

Monte Carlo sampling uses NumPy's ``PCG64`` bit generator seeded with the
caller's integer. Draws are taken in fixed chunks of ``MC_CHUNK`` pairs,
p_A before p_B within each chunk, so a given ``(table, samples, seed)``
always returns the same value.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy import integrate, special, stats

from .core import TrialTable, rates
from .decompose import max_common_cprime
from .errors import DomainError, TooLargeError

QUADRATURE_MAX_TRIALS = 200
RATIONAL_MAX_TRIALS = 2000
MC_MIN_SAMPLES = 10**4
MC_CHUNK = 10**5
GRID_MAX_LATTICE = 41
QUAD_TOL = 1e-11


class OracleMethod(enum.Enum):
    QUADRATURE = "QUADRATURE"
    RATIONAL = "RATIONAL"
    MONTE_CARLO = "MONTE_CARLO"
    GRID = "GRID"


@dataclass(frozen=True)
class OracleReport:
    value: float
    method: OracleMethod
    error_estimate: float
    seed: Optional[int] = None
    exact: Optional[Fraction] = None


def prob_a_beats_b_quadrature(table: TrialTable) -> OracleReport:
    """``Pr(p_A >= p_B)`` as a one-dimensional integral over p_B.

    The inner integral over p_A is the upper tail of Beta(S_A+1, F_A+1),
    taken from ``scipy.special.betaincc``; the outer integral is adaptive.
    """
    if table.total_trials > QUADRATURE_MAX_TRIALS:
        raise TooLargeError(
            f"N={table.total_trials} exceeds the quadrature limit {QUADRATURE_MAX_TRIALS}"
        )
    a_a, b_a = table.successes_a + 1, table.failures_a + 1
    a_b, b_b = table.successes_b + 1, table.failures_b + 1
    density = stats.beta(a_b, b_b)

    def integrand(p):
        return density.pdf(p) * special.betaincc(a_a, b_a, p)

    # breakpoints at both posterior means help when the densities are narrow
    points = sorted({a_a / (a_a + b_a), a_b / (a_b + b_b)})
    value, err = integrate.quad(
        integrand, 0.0, 1.0, points=points, epsabs=QUAD_TOL, epsrel=QUAD_TOL, limit=400
    )
    value = min(1.0, max(0.0, value))
    return OracleReport(value, OracleMethod.QUADRATURE, float(err) + 1e-13)


def prob_a_beats_b_rational(table: TrialTable) -> OracleReport:
    """Exact value of the finite sum, in rational arithmetic.

    ``sum_{j=0}^{F} C(S+1+j, S_A) C(F-j, F_A) / C(N+2, N_A+1)``
    """
    n = table.total_trials
    if n > RATIONAL_MAX_TRIALS:
        raise TooLargeError(f"N={n} exceeds the rational-oracle limit {RATIONAL_MAX_TRIALS}")
    sa, fa = table.successes_a, table.failures_a
    s = sa + table.successes_b
    f = fa + table.failures_b
    total = sum(math.comb(s + 1 + j, sa) * math.comb(f - j, fa) for j in range(f + 1))
    exact = Fraction(total, math.comb(n + 2, table.trials_a + 1))
    return OracleReport(float(exact), OracleMethod.RATIONAL, 0.0, exact=exact)


def prob_a_beats_b_montecarlo(table: TrialTable, samples: int = 10**6, seed: int = 0) -> OracleReport:
    """Fraction of posterior draws with ``p_A >= p_B``.

    ``error_estimate`` is three standard errors, using the add-one estimate
    ``(k+1)/(n+2)`` so the band never collapses to zero width.
    """
    if samples < MC_MIN_SAMPLES:
        raise DomainError(f"need at least {MC_MIN_SAMPLES} samples, got {samples}")
    rng = np.random.Generator(np.random.PCG64(seed))
    hits = 0
    left = samples
    while left > 0:
        m = min(MC_CHUNK, left)
        p_a = rng.beta(table.successes_a + 1, table.failures_a + 1, size=m)
        p_b = rng.beta(table.successes_b + 1, table.failures_b + 1, size=m)
        hits += int(np.count_nonzero(p_a >= p_b))
        left -= m
    smoothed = (hits + 1) / (samples + 2)
    err = 3.0 * math.sqrt(smoothed * (1.0 - smoothed) / samples)
    return OracleReport(hits / samples, OracleMethod.MONTE_CARLO, err, seed=seed)


def maximize_reversal_grid(table: TrialTable, lattice: int = GRID_MAX_LATTICE) -> OracleReport:
    """Best verified common ``C'`` over a plain ``lattice x lattice`` sweep.

    Every cell-centred (alpha, beta) is bisected on ``C'``. The arm that
    leads in aggregate is treated as A. Tied or degenerate tables have no
    reversing split and give 0.
    """
    if not 1 <= lattice <= GRID_MAX_LATTICE:
        raise DomainError(f"lattice must lie in [1, {GRID_MAX_LATTICE}], got {lattice}")
    rp = rates(table)
    if rp.p_a < rp.p_b:
        rp = rates(table.swapped())
    if rp.p_a == rp.p_b or rp.p_b == 0.0 or rp.p_a == 1.0:
        return OracleReport(0.0, OracleMethod.GRID, 0.0)
    grid = (np.arange(lattice) + 0.5) / lattice
    a, b = np.meshgrid(grid, grid, indexing="ij")
    c = max_common_cprime(rp, a.ravel(), b.ravel())
    best = float(np.max(c))
    return OracleReport(max(best, 0.0), OracleMethod.GRID, 1e-9)
