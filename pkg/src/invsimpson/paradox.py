"""Classical Simpson reversal: two parts agree, their merge disagrees."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .asymptotics import ComparisonResult, Method, prob_a_beats_b_normal
from .bayes import prob_a_beats_b_exact
from .core import Direction, TrialTable, direction, merge
from .errors import DegenerateRateError, DomainError


@dataclass(frozen=True)
class SimpsonReport:
    part_directions: Tuple[Direction, Direction]
    merged_direction: Direction
    reversal: bool
    part_confidences: Tuple[ComparisonResult, ComparisonResult]
    merged_confidence: ComparisonResult


def compare(table: TrialTable, force_exact: bool = False) -> ComparisonResult:
    """Normal-theory comparison, falling back to the exact posterior when a rate is 0 or 1."""
    try:
        return prob_a_beats_b_normal(table)
    except DegenerateRateError:
        return ComparisonResult(
            prob_a_beats_b_exact(table, force=force_exact), None, None, None, Method.EXACT
        )


def simpson_check(t1: TrialTable, t2: TrialTable) -> SimpsonReport:
    merged = merge(t1, t2)
    d1, d2 = direction(t1), direction(t2)
    dm = direction(merged)
    # a tie supports no claim: tied parts cannot be reversed, and a tied
    # merge is not the opposite conclusion
    reversal = d1 == d2 and Direction.TIE not in (d1, dm) and dm is not d1
    return SimpsonReport(
        part_directions=(d1, d2),
        merged_direction=dm,
        reversal=reversal,
        part_confidences=(compare(t1), compare(t2)),
        merged_confidence=compare(merged),
    )


def _exact(x) -> Fraction:
    # floats are read through their shortest repr so 0.3 means 3/10
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def _check_prototype_rates(a, b):
    if not (0 <= a < Fraction(1, 2) and 0 <= b < Fraction(1, 2)):
        raise DomainError(f"prototype needs 0 <= a, b < 1/2, got a={a}, b={b}")
    if a > b:
        raise DomainError(f"prototype needs a <= b, got a={a}, b={b}")


def prototype_reversal_threshold(a, b) -> float:
    """Ratio ``(1 - 2b) / (1 - 2a)``; the prototype reverses when N_1 < ratio * N_2."""
    a, b = _exact(a), _exact(b)
    _check_prototype_rates(a, b)
    return float((1 - 2 * b) / (1 - 2 * a))


def prototype_reversal_predicted(a, b, n1: int, n2: int) -> bool:
    a, b = _exact(a), _exact(b)
    _check_prototype_rates(a, b)
    return n1 * (1 - 2 * a) < n2 * (1 - 2 * b)


def prototype_tables(a, b, n1: int, n2: int) -> Tuple[TrialTable, TrialTable]:
    """The two trials of the prototype: A is tested N_1 then N_2 times, B the reverse.

    Trial 1: A succeeds (1-a)N_1 of N_1, B succeeds (1-b)N_2 of N_2.
    Trial 2: A succeeds bN_2 of N_2, B succeeds aN_1 of N_1.
    """
    a, b = _exact(a), _exact(b)
    _check_prototype_rates(a, b)
    counts = [(1 - a) * n1, (1 - b) * n2, b * n2, a * n1]
    if any(c.denominator != 1 for c in counts):
        raise DomainError("a*N_1 and b*N_2 must be whole numbers")
    sa1, sb1, sa2, sb2 = (int(c) for c in counts)
    return TrialTable(sa1, n1, sb1, n2), TrialTable(sa2, n2, sb2, n1)
