"""Conditional interval probabilities, independence, and capacity updating.

Conditioning on an event H widens the classical conditional: both endpoints
divide by the mass of H together with its uncertainty set, the lower
endpoint measuring A against that widened event and the upper endpoint
additionally granting A its own uncertainty.  An event is independent of H
when conditioning on H leaves its interval untouched; the relation is not
symmetric.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .algebra import Event, Partition, SampleSpace, psi
from .errors import NegligibleEventError, SpaceMismatchError
from .measures import (
    Interval,
    ProbMeasure,
    RandomVariable,
    UncertaintyFamily,
    interval_measure,
)
from .rationals import as_rational

__all__ = [
    "Capacity",
    "conditional",
    "conditional_psi",
    "block_conditional_closed_form",
    "is_independent",
    "dempster_shafer_conditional",
]


def _check_space(space: SampleSpace, *items) -> None:
    for item in items:
        if item.space != space:
            raise SpaceMismatchError("operands belong to different sample spaces")


def conditional(
    measure: ProbMeasure,
    family: UncertaintyFamily,
    event_a: Event,
    given: Event,
) -> Interval:
    """Interval probability of `event_a` conditioned on `given`.

    Writing C = I_given + Y_given for the conditioning carrier, the result
    is [E[I_A * C], E[(I_A + Y_A) * C]] / E[C].  The conditioning event
    must not be negligible, meaning its own interval must differ from
    [0, 0]; conditioning on an event with zero mass but positive
    uncertainty is allowed.
    """
    _check_space(measure.space, family, event_a, given)
    carrier = RandomVariable.indicator(given) + family.value_at(given)
    denominator = measure.expectation(carrier)
    if denominator == 0:
        raise NegligibleEventError(
            f"conditioning event {given!r} has interval measure [0, 0]"
        )
    ind_a = RandomVariable.indicator(event_a)
    lo = measure.expectation(ind_a * carrier) / denominator
    hi = measure.expectation((ind_a + family.value_at(event_a)) * carrier) / denominator
    return Interval(lo, hi)


def conditional_psi(
    measure: ProbMeasure,
    partition: Partition,
    event_a: Event,
    given: Event,
) -> Interval:
    """Closed form of the conditional for a partition-indicator family.

    Both endpoints are classical conditionals given the complement of the
    weak complement of `given`: the lower one of `event_a` itself, the
    upper one of the complement of `event_a`'s weak complement.  Agrees
    exactly with `conditional` under the same partition.
    """
    _check_space(measure.space, partition, event_a, given)
    base = psi(given, partition).complement()
    denominator = measure(base)
    if denominator == 0:
        raise NegligibleEventError(
            f"conditioning event {given!r} has interval measure [0, 0]"
        )
    lo = measure(event_a & base) / denominator
    hi = measure(psi(event_a, partition).complement() & base) / denominator
    return Interval(lo, hi)


def block_conditional_closed_form(
    measure: ProbMeasure,
    partition: Partition,
    event_a: Event,
    given: Event,
    n: int,
    m: int,
) -> Interval:
    """Conditional when both events sit inside single blocks.

    `given` must be a non-empty, non-negligible subset of block n and
    `event_a` a non-empty subset of block m.  Distinct blocks give
    [P(A), P(H) + 1 - P(Z_n) - P(Z_m minus A)] over P(H) + 1 - P(Z_n);
    within one block the numerators use P(A and H) instead.  Agrees
    exactly with `conditional_psi` on these inputs.
    """
    _check_space(measure.space, partition, event_a, given)
    blocks = partition.blocks
    if not 0 <= n < len(blocks) or not 0 <= m < len(blocks):
        raise ValueError("block index out of range")
    if not given or not given.is_subset_of(blocks[n]):
        raise ValueError("conditioning event must be a non-empty subset of its block")
    if not event_a or not event_a.is_subset_of(blocks[m]):
        raise ValueError("target event must be a non-empty subset of its block")

    p_h = measure(given)
    p_zn = measure(blocks[n])
    denominator = p_h + 1 - p_zn
    if denominator == 0:
        raise NegligibleEventError(
            f"conditioning event {given!r} has interval measure [0, 0]"
        )
    if n != m:
        p_a = measure(event_a)
        missing = measure(blocks[m] - event_a)
        return Interval(p_a / denominator, (denominator - missing) / denominator)
    p_ah = measure(event_a & given)
    return Interval(p_ah / denominator, (p_ah + 1 - p_zn) / denominator)


def is_independent(
    measure: ProbMeasure,
    family: UncertaintyFamily,
    event_a: Event,
    given: Event,
) -> bool:
    """True when conditioning on `given` leaves `event_a`'s interval fixed.

    Equality is exact on both endpoints.  The relation is asymmetric:
    reweighting an event on a null set with positive uncertainty can break
    independence in one direction only.
    """
    return conditional(measure, family, event_a, given) == interval_measure(
        measure, family, event_a
    )


@dataclass(frozen=True)
class Capacity:
    """Normalized monotone set function over the full powerset."""

    space: SampleSpace
    values: tuple[Fraction, ...]

    def __post_init__(self):
        values = tuple(as_rational(v) for v in self.values)
        object.__setattr__(self, "values", values)
        full = self.space.full_mask
        if len(values) != full + 1:
            raise ValueError(
                f"partial capacity: expected {full + 1} values, got {len(values)}"
            )
        if values[0] != 0:
            raise ValueError("capacity of the empty set must be 0")
        if values[full] != 1:
            raise ValueError("capacity of the full space must be 1")
        for mask in range(full + 1):
            for i in range(self.space.size):
                if mask >> i & 1:
                    continue
                if values[mask | 1 << i] < values[mask]:
                    raise ValueError("capacity must be monotone")

    @classmethod
    def from_prob_measure(cls, measure: ProbMeasure) -> Capacity:
        space = measure.space
        return cls(
            space, tuple(measure(event) for event in space.events())
        )

    @classmethod
    def from_callable(cls, space: SampleSpace, fn) -> Capacity:
        return cls(
            space, tuple(as_rational(fn(event)) for event in space.events())
        )

    def __call__(self, event: Event) -> Fraction:
        _check_space(self.space, event)
        return self.values[event.mask]

    @cached_property
    def is_superadditive(self) -> bool:
        full = self.space.full_mask
        return all(
            self.values[m] + self.values[full ^ m] <= 1 for m in range(full + 1)
        )


def dempster_shafer_conditional(
    capacity: Capacity, event_a: Event, given: Event
) -> Fraction:
    """Dempster-Shafer style update of a capacity.

    Returns (v((A and H) or not-H) - v(not-H)) / (1 - v(not-H)).  For an
    additive capacity this collapses to the Bayes rule; substituting the
    weak complement for the plain complement recovers the lower endpoint
    of the partition conditional.
    """
    _check_space(capacity.space, event_a, given)
    comp = given.complement()
    v_comp = capacity(comp)
    if v_comp == 1:
        raise NegligibleEventError(
            f"capacity of the complement of {given!r} is 1"
        )
    return (capacity((event_a & given) | comp) - v_comp) / (1 - v_comp)
