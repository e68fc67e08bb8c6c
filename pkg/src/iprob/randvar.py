"""Interval distribution functions, pushforward laws, stochastic dominance.

The interval CDF of a variable at a threshold is the interval measure of
the sublevel event.  Because the space is finite, both CDFs under
comparison only change at attained values, so the dominance quantifier
over all real thresholds reduces to the finite set of attained values.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .algebra import Partition
from .errors import SpaceMismatchError
from .measures import (
    Interval,
    PartitionIndicator,
    ProbMeasure,
    RandomVariable,
    UncertaintyFamily,
    interval_measure,
)
from .rationals import RationalLike, as_rational

__all__ = ["threshold_set", "interval_cdf", "pushforward_law", "dominates"]


def threshold_set(*variables: RandomVariable) -> tuple[Fraction, ...]:
    """Sorted distinct values attained by the given variables."""
    values: set[Fraction] = set()
    for variable in variables:
        values.update(variable.values)
    return tuple(sorted(values))


def interval_cdf(
    measure: ProbMeasure,
    family: UncertaintyFamily,
    variable: RandomVariable,
    threshold: RationalLike,
) -> Interval:
    """Interval measure of the event where the variable is at most `threshold`.

    The lower endpoint is the classical CDF; the upper endpoint need not be
    monotone in the threshold.
    """
    if variable.space != measure.space:
        raise SpaceMismatchError("operands belong to different sample spaces")
    return interval_measure(measure, family, variable.event_leq(threshold))


def pushforward_law(
    measure: ProbMeasure,
    partition: Partition,
    variable: RandomVariable,
    values: Iterable[RationalLike],
) -> Interval:
    """Interval measure of the preimage of a set of attained values."""
    wanted = {as_rational(v) for v in values}
    attained = set(variable.values)
    stray = wanted - attained
    if stray:
        raise ValueError(
            f"values {sorted(stray)} are not attained by the variable"
        )
    return interval_measure(
        measure, PartitionIndicator(partition), variable.preimage(wanted)
    )


def dominates(
    measure: ProbMeasure,
    family: UncertaintyFamily,
    first: RandomVariable,
    second: RandomVariable,
) -> bool:
    """Interval stochastic dominance of `first` over `second`.

    At every attained threshold, the first variable's lower CDF must not
    exceed the second's and its CDF interval must be at least as wide.
    """
    for t in threshold_set(first, second):
        cdf_first = interval_cdf(measure, family, first, t)
        cdf_second = interval_cdf(measure, family, second, t)
        if cdf_first.lo > cdf_second.lo or cdf_first.width < cdf_second.width:
            return False
    return True
