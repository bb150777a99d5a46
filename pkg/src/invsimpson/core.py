"""Data model for two-arm binomial comparisons.

A :class:`TrialTable` holds integer success/trial counts for arms A and B.
Decomposition solvers work with real-valued splits, which live in the
separate :class:`FractionalTable` type; turning those back into whole
counts is an explicit step (see :func:`invsimpson.decompose.integerize`).
"""

from __future__ import annotations

import enum
import math
import operator
from dataclasses import dataclass, field

from .errors import CountExceedsTrialsError, DomainError, EmptyArmError

MAX_COUNT = 2**53 - 1


class Direction(enum.Enum):
    A_AHEAD = "A_AHEAD"
    B_AHEAD = "B_AHEAD"
    TIE = "TIE"


def _as_count(value, name):
    if isinstance(value, bool):
        raise DomainError(f"{name} must be an integer count, got {value!r}")
    if isinstance(value, float):
        if not value.is_integer():
            raise DomainError(f"{name} must be an integer count, got {value!r}")
        value = int(value)
    try:
        value = operator.index(value)
    except TypeError:
        raise DomainError(f"{name} must be an integer count, got {value!r}") from None
    if value < 0:
        raise DomainError(f"{name} must be non-negative, got {value}")
    if value > MAX_COUNT:
        raise DomainError(f"{name}={value} exceeds the supported maximum 2**53-1")
    return value


@dataclass(frozen=True)
class TrialTable:
    """Validated integer counts for a two-arm trial."""

    successes_a: int
    trials_a: int
    successes_b: int
    trials_b: int

    def __post_init__(self):
        for name in ("successes_a", "trials_a", "successes_b", "trials_b"):
            object.__setattr__(self, name, _as_count(getattr(self, name), name))
        for arm in ("a", "b"):
            s = getattr(self, f"successes_{arm}")
            n = getattr(self, f"trials_{arm}")
            if n == 0:
                raise EmptyArmError(f"arm {arm.upper()} has no trials")
            if s > n:
                raise CountExceedsTrialsError(
                    f"arm {arm.upper()}: {s} successes exceed {n} trials"
                )

    @property
    def failures_a(self) -> int:
        return self.trials_a - self.successes_a

    @property
    def failures_b(self) -> int:
        return self.trials_b - self.successes_b

    @property
    def total_trials(self) -> int:
        return self.trials_a + self.trials_b

    def swapped(self) -> TrialTable:
        """The same data with the arm labels exchanged."""
        return TrialTable(self.successes_b, self.trials_b, self.successes_a, self.trials_a)

    def as_tuple(self):
        return (self.successes_a, self.trials_a, self.successes_b, self.trials_b)


@dataclass(frozen=True)
class FractionalTable:
    """Real-valued counts, as produced by the decomposition solvers."""

    successes_a: float
    trials_a: float
    successes_b: float
    trials_b: float

    def __post_init__(self):
        for name in ("successes_a", "trials_a", "successes_b", "trials_b"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value < 0:
                raise DomainError(f"{name} must be finite and non-negative, got {value!r}")
            object.__setattr__(self, name, value)
        for arm in ("a", "b"):
            s = getattr(self, f"successes_{arm}")
            n = getattr(self, f"trials_{arm}")
            if n <= 0:
                raise EmptyArmError(f"arm {arm.upper()} has no trials")
            if s > n:
                raise CountExceedsTrialsError(
                    f"arm {arm.upper()}: {s} successes exceed {n} trials"
                )

    @classmethod
    def from_table(cls, table: TrialTable) -> FractionalTable:
        return cls(*map(float, table.as_tuple()))

    @property
    def rate_a(self) -> float:
        return self.successes_a / self.trials_a

    @property
    def rate_b(self) -> float:
        return self.successes_b / self.trials_b

    def as_tuple(self):
        return (self.successes_a, self.trials_a, self.successes_b, self.trials_b)

    def is_integral(self) -> bool:
        return all(float(v).is_integer() for v in self.as_tuple())


@dataclass(frozen=True)
class RatePair:
    """Aggregate success rates plus arm sizes.

    ``gamma`` is the share of all trials that went to arm A; it is derived
    from ``n_a`` and ``n_b`` when not given.
    """

    p_a: float
    p_b: float
    n_a: float
    n_b: float
    gamma: float = field(default=None)

    def __post_init__(self):
        for name in ("p_a", "p_b"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise DomainError(f"{name}={p!r} is not a rate in [0, 1]")
        if self.n_a <= 0 or self.n_b <= 0:
            raise EmptyArmError("arm sizes must be positive")
        if self.gamma is None:
            object.__setattr__(self, "gamma", self.n_a / (self.n_a + self.n_b))
        if not 0.0 < self.gamma < 1.0:
            raise DomainError(f"gamma={self.gamma!r} is not in (0, 1)")

    @property
    def q_a(self) -> float:
        return 1.0 - self.p_a

    @property
    def q_b(self) -> float:
        return 1.0 - self.p_b


def make_table(successes_a, trials_a, successes_b, trials_b) -> TrialTable:
    return TrialTable(successes_a, trials_a, successes_b, trials_b)


def rates(table: TrialTable) -> RatePair:
    return RatePair(
        p_a=table.successes_a / table.trials_a,
        p_b=table.successes_b / table.trials_b,
        n_a=table.trials_a,
        n_b=table.trials_b,
        gamma=table.trials_a / table.total_trials,
    )


def merge(t1: TrialTable, t2: TrialTable) -> TrialTable:
    """Pool two trials by summing every count."""
    return TrialTable(*(x + y for x, y in zip(t1.as_tuple(), t2.as_tuple())))


def direction(table: TrialTable) -> Direction:
    # S_A/N_A vs S_B/N_B compared by exact integer cross-multiplication
    lhs = table.successes_a * table.trials_b
    rhs = table.successes_b * table.trials_a
    if lhs > rhs:
        return Direction.A_AHEAD
    if lhs < rhs:
        return Direction.B_AHEAD
    return Direction.TIE
