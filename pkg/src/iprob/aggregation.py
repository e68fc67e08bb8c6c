"""Aggregation of several interval probability measures.

A collection pools expert models (P_j, Y_j) over one sample space.  The
envelope interval takes the least lower endpoint and the greatest upper
endpoint member-wise; the pooled interval instead evaluates every member
against the shared global uncertainty, which dominates each member's own.
The coherence score reports how far the worst member's uncertainty mass
falls short of the pooled mass: zero means the members agree on where the
uncertainty lives.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Event, SampleSpace, uncertainty_set
from .errors import HypothesisError, SpaceMismatchError
from .measures import (
    AlphaFamily,
    Interval,
    PartitionIndicator,
    ProbMeasure,
    RandomVariable,
    UncertaintyFamily,
    interval_measure,
)

__all__ = [
    "MeasureCollection",
    "tilde_q",
    "global_uncertainty",
    "hat_q",
    "coherence_delta",
]

log = logging.getLogger(__name__)

_ZERO = Fraction(0)


@dataclass(frozen=True)
class MeasureCollection:
    """Non-empty list of (measure, family) members over one space."""

    members: tuple[tuple[ProbMeasure, UncertaintyFamily], ...]

    def __post_init__(self):
        members = tuple(tuple(m) for m in self.members)
        object.__setattr__(self, "members", members)
        if not members:
            raise ValueError("a collection needs at least one member")
        space = members[0][0].space
        for measure, family in members:
            if measure.space != space or family.space != space:
                raise SpaceMismatchError(
                    "collection members belong to different sample spaces"
                )

    @property
    def space(self) -> SampleSpace:
        return self.members[0][0].space


def tilde_q(collection: MeasureCollection, event: Event) -> Interval:
    """Member-wise envelope: least lower endpoint, greatest upper endpoint.

    Not an interval probability measure in general; its width can grow
    along inclusions when the members' lower endpoints disagree.
    """
    intervals = [
        interval_measure(measure, family, event)
        for measure, family in collection.members
    ]
    return Interval(min(i.lo for i in intervals), max(i.hi for i in intervals))


def _member_rate(
    measure: ProbMeasure, family: UncertaintyFamily, event: Event
) -> RandomVariable:
    """Member's contribution to the pooled uncertainty, at `event`."""
    space = measure.space
    if isinstance(family, PartitionIndicator):
        return RandomVariable.indicator(uncertainty_set(event, family.partition))
    if isinstance(family, AlphaFamily):
        comp = event.complement().mask
        values = [_ZERO] * space.size
        for i, block in enumerate(family.partition.blocks):
            mass = measure(block)
            if mass == 0:
                raise HypothesisError(
                    f"block {i} of an alpha member carries zero mass"
                )
            weight = family.weight_of(i, event)
            if weight > mass:
                raise HypothesisError(
                    f"alpha weight {weight} for block {i} exceeds its mass {mass}"
                )
            live = block.mask & comp
            m = live
            while m:
                low = m & -m
                values[low.bit_length() - 1] = weight / mass
                m ^= low
        return RandomVariable(space, tuple(values))
    raise HypothesisError(
        "global uncertainty needs partition-indicator or alpha members"
    )


def global_uncertainty(collection: MeasureCollection, event: Event) -> RandomVariable:
    """Pointwise maximum of the members' normalized uncertainty rates.

    For partition-indicator members this is the indicator of the union of
    their uncertainty sets.
    """
    space = collection.space
    if event.space != space:
        raise SpaceMismatchError("event belongs to a different sample space")
    rates = [
        _member_rate(measure, family, event)
        for measure, family in collection.members
    ]
    values = tuple(
        max(rate.values[i] for rate in rates) for i in range(space.size)
    )
    return RandomVariable(space, values)


def hat_q(collection: MeasureCollection, event: Event) -> Interval:
    """Pooled interval: every member evaluated on the global uncertainty.

    Always contains the member-wise envelope, since the global uncertainty
    dominates each member's own.
    """
    pooled = global_uncertainty(collection, event)
    lows = []
    highs = []
    for measure, _family in collection.members:
        p = measure(event)
        lows.append(p)
        highs.append(p + measure.expectation(pooled))
    return Interval(min(lows), max(highs))


def coherence_delta(collection: MeasureCollection, event: Event) -> Fraction:
    """Worst-case shortfall of member uncertainty against the pooled one.

    Each member contributes 1 minus the ratio of its own uncertainty mass
    to the pooled uncertainty mass under its measure; the score is the
    largest contribution, a value in [0, 1].  Small values mean the
    members locate uncertainty in the same places.  A member whose pooled
    mass vanishes has nothing to cohere with and contributes 0.
    """
    pooled = global_uncertainty(collection, event)
    best = _ZERO
    for j, (measure, family) in enumerate(collection.members):
        pooled_mass = measure.expectation(pooled)
        if pooled_mass == 0:
            log.debug(
                "member %d sees no pooled uncertainty mass at %r; "
                "its coherence term is 0",
                j,
                event,
            )
            term = _ZERO
        else:
            own = measure.expectation(family.value_at(event))
            term = 1 - own / pooled_mass
        if term > best:
            best = term
    return best
