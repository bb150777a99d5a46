"""Special-function kernel: log-gamma, log-binomial, regularized incomplete
beta and the standard normal CDF.

``log_gamma`` and ``std_normal_cdf`` delegate to the C library routines in
:mod:`math` (``lgamma`` and ``erfc``), which are accurate to a few ulp over
the supported range. The incomplete beta is evaluated here with a modified
Lentz continued fraction.
"""

import math

from .errors import DomainError, NoConvergenceError

CF_MAX_ITER = 500
CF_TOL = 1e-15
_TINY = 1e-300

# exact log C(n, k) below this size
_EXACT_BINOMIAL_MAX_N = 60
_LOG_BINOMIAL_TABLE = [
    [math.log(math.comb(n, k)) for k in range(n + 1)]
    for n in range(_EXACT_BINOMIAL_MAX_N + 1)
]


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for ``x > 0``."""
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def log_beta(a: float, b: float) -> float:
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def log_binomial(n: int, k: int) -> float:
    """``ln C(n, k)``; exact table for n <= 60, log-gamma otherwise."""
    if k < 0 or n < 0 or k > n:
        raise DomainError(f"log_binomial requires 0 <= k <= n, got n={n}, k={k}")
    if n <= _EXACT_BINOMIAL_MAX_N:
        return _LOG_BINOMIAL_TABLE[n][k]
    # lgamma(k+1) + lgamma(n-k+1) is symmetric in k <-> n-k bit for bit
    return math.lgamma(n + 1) - (math.lgamma(k + 1) + math.lgamma(n - k + 1))


def logsumexp(values) -> float:
    """Stable ``log(sum(exp(v)))`` with compensated summation."""
    values = list(values)
    if not values:
        return -math.inf
    top = max(values)
    if top == -math.inf:
        return -math.inf
    return top + math.log(math.fsum(math.exp(v - top) for v in values))


def _beta_continued_fraction(x, a, b):
    # modified Lentz evaluation of the incomplete-beta continued fraction
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < CF_TOL:
            return h
    raise NoConvergenceError(
        f"incomplete beta continued fraction did not settle (x={x}, a={a}, b={b})"
    )


def regularized_incomplete_beta(x: float, a: float, b: float) -> float:
    """``I_x(a, b) = B_x(a, b) / B(a, b)`` for x in [0, 1] and a, b > 0."""
    if not (a > 0 and b > 0):
        raise DomainError(f"incomplete beta requires a, b > 0, got a={a!r}, b={b!r}")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"incomplete beta requires 0 <= x <= 1, got {x!r}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    log_front = a * math.log(x) + b * math.log1p(-x) - log_beta(a, b)
    if x > (a + 1.0) / (a + b + 2.0):
        # symmetry transform I_x(a, b) = 1 - I_{1-x}(b, a)
        tail = math.exp(log_front) * _beta_continued_fraction(1.0 - x, b, a) / b
        return min(1.0, max(0.0, 1.0 - tail))
    value = math.exp(log_front) * _beta_continued_fraction(x, a, b) / a
    return min(1.0, max(0.0, value))


def std_normal_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / math.sqrt(2.0))
