"""Exact probability measures and interval probability measures.

An interval probability measure assigns each event a closed subinterval of
[0, 1]: the lower endpoint is an ordinary (additive) probability and the
width is the mass of the event's uncertainty, which must shrink as the
event grows.  The general construction pairs a probability measure with a
non-increasing family of [0, 1]-valued uncertainty variables, one per
event, each vanishing on its event; the partition-induced special case
uses the indicator of the uncertainty set.

Everything is exact: weights, endpoints and expectations are
`fractions.Fraction` values and equality tests are exact.
"""

from __future__ import annotations

import abc
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .algebra import Event, Partition, SampleSpace, uncertainty_set
from .errors import FamilyDomainError, HypothesisError, SpaceMismatchError
from .limits import EVENT_SCAN_CAP, FAMILY_SCAN_CAP, check_budget
from .rationals import RationalLike, as_rational, decimal_str

__all__ = [
    "ProbMeasure",
    "RandomVariable",
    "Interval",
    "UncertaintyFamily",
    "PartitionIndicator",
    "ScaledComplement",
    "AlphaFamily",
    "ExplicitFamily",
    "IntervalMeasureTable",
    "PartitionFormResult",
    "family_value",
    "family_violations",
    "interval_measure",
    "build_table",
    "recover_partition_form",
    "width_superadditivity",
    "reconstruct_family",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _check_space(space: SampleSpace, *items) -> None:
    for item in items:
        if item.space != space:
            raise SpaceMismatchError("operands belong to different sample spaces")


@dataclass(frozen=True)
class ProbMeasure:
    """Exact non-negative weight per outcome, summing to one."""

    space: SampleSpace
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        weights = tuple(as_rational(w) for w in self.weights)
        object.__setattr__(self, "weights", weights)
        if len(weights) != self.space.size:
            raise ValueError("need exactly one weight per outcome")
        if any(w < 0 for w in weights):
            raise ValueError("weights must be non-negative")
        total = sum(weights)
        if total != 1:
            raise ValueError(f"weights sum to {total}, expected 1")

    @classmethod
    def from_weights(
        cls,
        space: SampleSpace,
        weights: Mapping[str, RationalLike] | Sequence[RationalLike],
    ) -> ProbMeasure:
        if isinstance(weights, Mapping):
            missing = [o for o in space.outcomes if o not in weights]
            if missing:
                raise ValueError(f"missing weight for outcomes {missing}")
            extra = [k for k in weights if k not in space.outcomes]
            if extra:
                raise ValueError(f"weights for unknown outcomes {extra}")
            seq = tuple(as_rational(weights[o]) for o in space.outcomes)
        else:
            seq = tuple(as_rational(w) for w in weights)
        return cls(space, seq)

    @classmethod
    def uniform(cls, space: SampleSpace) -> ProbMeasure:
        w = Fraction(1, space.size)
        return cls(space, (w,) * space.size)

    def weight(self, label: str) -> Fraction:
        return self.weights[self.space.index(label)]

    def __call__(self, event: Event) -> Fraction:
        _check_space(self.space, event)
        total = _ZERO
        mask = event.mask
        while mask:
            low = mask & -mask
            total += self.weights[low.bit_length() - 1]
            mask ^= low
        return total

    def expectation(self, variable: RandomVariable) -> Fraction:
        _check_space(self.space, variable)
        return sum(
            (w * v for w, v in zip(self.weights, variable.values) if w and v),
            _ZERO,
        )

    def mix(self, other: ProbMeasure, weight: RationalLike) -> ProbMeasure:
        """Convex blend: `weight` of self plus the rest of `other`."""
        _check_space(self.space, other)
        lam = as_rational(weight)
        if not 0 <= lam <= 1:
            raise ValueError("blend weight must lie in [0, 1]")
        return ProbMeasure(
            self.space,
            tuple(
                lam * a + (1 - lam) * b
                for a, b in zip(self.weights, other.weights)
            ),
        )


@dataclass(frozen=True)
class RandomVariable:
    """Exact rational value per outcome."""

    space: SampleSpace
    values: tuple[Fraction, ...]

    def __post_init__(self):
        values = tuple(as_rational(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if len(values) != self.space.size:
            raise ValueError("need exactly one value per outcome")

    @classmethod
    def from_values(
        cls,
        space: SampleSpace,
        values: Mapping[str, RationalLike] | Sequence[RationalLike],
    ) -> RandomVariable:
        if isinstance(values, Mapping):
            missing = [o for o in space.outcomes if o not in values]
            if missing:
                raise ValueError(f"random variable undefined on {missing}")
            extra = [k for k in values if k not in space.outcomes]
            if extra:
                raise ValueError(f"values for unknown outcomes {extra}")
            seq = tuple(as_rational(values[o]) for o in space.outcomes)
        else:
            seq = tuple(as_rational(v) for v in values)
        return cls(space, seq)

    @classmethod
    def indicator(cls, event: Event) -> RandomVariable:
        return cls(
            event.space,
            tuple(
                _ONE if event.mask >> i & 1 else _ZERO
                for i in range(event.space.size)
            ),
        )

    @classmethod
    def constant(cls, space: SampleSpace, value: RationalLike) -> RandomVariable:
        v = as_rational(value)
        return cls(space, (v,) * space.size)

    @classmethod
    def zero(cls, space: SampleSpace) -> RandomVariable:
        return cls.constant(space, 0)

    def value(self, label: str) -> Fraction:
        return self.values[self.space.index(label)]

    def __add__(self, other: RandomVariable | RationalLike) -> RandomVariable:
        if isinstance(other, RandomVariable):
            _check_space(self.space, other)
            return RandomVariable(
                self.space,
                tuple(a + b for a, b in zip(self.values, other.values)),
            )
        shift = as_rational(other)
        return RandomVariable(self.space, tuple(v + shift for v in self.values))

    __radd__ = __add__

    def __mul__(self, other: RandomVariable | RationalLike) -> RandomVariable:
        if isinstance(other, RandomVariable):
            _check_space(self.space, other)
            return RandomVariable(
                self.space,
                tuple(a * b for a, b in zip(self.values, other.values)),
            )
        scale = as_rational(other)
        return RandomVariable(self.space, tuple(v * scale for v in self.values))

    __rmul__ = __mul__

    def leq(self, other: RandomVariable) -> bool:
        _check_space(self.space, other)
        return all(a <= b for a, b in zip(self.values, other.values))

    def event_leq(self, threshold: RationalLike) -> Event:
        t = as_rational(threshold)
        mask = 0
        for i, v in enumerate(self.values):
            if v <= t:
                mask |= 1 << i
        return Event(self.space, mask)

    def preimage(self, values: Iterable[RationalLike]) -> Event:
        wanted = {as_rational(v) for v in values}
        mask = 0
        for i, v in enumerate(self.values):
            if v in wanted:
                mask |= 1 << i
        return Event(self.space, mask)

    @property
    def attained(self) -> tuple[Fraction, ...]:
        return tuple(sorted(set(self.values)))


@dataclass(frozen=True)
class Interval:
    """Closed subinterval of [0, 1] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = as_rational(self.lo), as_rational(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if not 0 <= lo <= hi <= 1:
            raise ValueError(f"need 0 <= lo <= hi <= 1, got [{lo}, {hi}]")

    @classmethod
    def point(cls, value: RationalLike) -> Interval:
        v = as_rational(value)
        return cls(v, v)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def contains(self, other: Interval) -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __contains__(self, value: RationalLike) -> bool:
        v = as_rational(value)
        return self.lo <= v <= self.hi

    def to_json_obj(self) -> dict:
        return {
            "lo": str(self.lo),
            "hi": str(self.hi),
            "decimal": f"[{decimal_str(self.lo)}, {decimal_str(self.hi)}]",
        }

    def __repr__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


class UncertaintyFamily(abc.ABC):
    """Rule assigning each event a [0, 1]-valued variable vanishing on it.

    Families are non-increasing: growing the event can only lower the
    uncertainty variable, pointwise.  `family_violations` checks this
    exhaustively on small spaces.
    """

    space: SampleSpace

    @abc.abstractmethod
    def value_at(self, event: Event) -> RandomVariable:
        """Uncertainty variable attached to `event`."""


@dataclass(frozen=True)
class PartitionIndicator(UncertaintyFamily):
    """Indicator of the partition-induced uncertainty set."""

    partition: Partition

    @property
    def space(self) -> SampleSpace:
        return self.partition.space

    def value_at(self, event: Event) -> RandomVariable:
        _check_space(self.space, event)
        return RandomVariable.indicator(uncertainty_set(event, self.partition))


@dataclass(frozen=True)
class ScaledComplement(UncertaintyFamily):
    """Constant fraction of the plain complement's indicator.

    The scale acts as a reliability weight: larger scales widen every
    interval by a larger share of the complement's mass.
    """

    space: SampleSpace
    scale: Fraction

    def __post_init__(self):
        object.__setattr__(self, "scale", as_rational(self.scale))
        if not 0 < self.scale < 1:
            raise ValueError("scale must lie strictly between 0 and 1")

    def value_at(self, event: Event) -> RandomVariable:
        _check_space(self.space, event)
        return RandomVariable.indicator(event.complement()) * self.scale


@dataclass(frozen=True)
class AlphaFamily(UncertaintyFamily):
    """Block-weighted uncertainty on the complement.

    `alpha(i, event)` gives the weight of block i for the event; weights
    must lie in [0, 1] and, for the family to be non-increasing, must not
    grow as the event grows (validation of that is opt-in through
    `family_violations` since alpha has a powerset-sized domain).  Values
    are memoized per (block, event) pair behind a lock.
    """

    partition: Partition
    alpha: Callable[[int, Event], RationalLike]
    _memo: dict = field(default_factory=dict, compare=False, repr=False)
    _lock: threading.Lock = field(
        default_factory=threading.Lock, compare=False, repr=False
    )

    def __post_init__(self):
        if self.partition.is_cover:
            raise ValueError("alpha families need disjoint blocks")

    @property
    def space(self) -> SampleSpace:
        return self.partition.space

    def weight_of(self, index: int, event: Event) -> Fraction:
        """Memoized, range-checked alpha weight for one block."""
        key = (index, event.mask)
        with self._lock:
            hit = self._memo.get(key)
        if hit is not None:
            return hit
        value = as_rational(self.alpha(index, event))
        if not 0 <= value <= 1:
            raise ValueError(
                f"alpha weight {value} for block {index} is outside [0, 1]"
            )
        with self._lock:
            self._memo[key] = value
        return value

    def value_at(self, event: Event) -> RandomVariable:
        _check_space(self.space, event)
        comp = event.complement().mask
        values = [_ZERO] * self.space.size
        for i, block in enumerate(self.partition.blocks):
            live = block.mask & comp
            if not live:
                continue
            a = self.weight_of(i, event)
            if not a:
                continue
            m = live
            while m:
                low = m & -m
                values[low.bit_length() - 1] = a
                m ^= low
        return RandomVariable(self.space, tuple(values))

    @classmethod
    def indicator_of_uncovered(cls, partition: Partition) -> AlphaFamily:
        """Alpha weights 1 exactly on blocks outside the event."""
        return cls(
            partition,
            lambda i, event: 1 if partition.blocks[i].is_disjoint_from(event) else 0,
        )


@dataclass(frozen=True)
class ExplicitFamily(UncertaintyFamily):
    """Lookup table of uncertainty variables, one per listed event.

    With `strict` left on, entries must take values in [0, 1]; reconstructed
    families switch it off because the reconstruction can overshoot 1 while
    still reproducing every expectation exactly.
    """

    space: SampleSpace
    table: Mapping[Event, RandomVariable]
    strict: bool = True

    def __post_init__(self):
        table = dict(self.table)
        object.__setattr__(self, "table", table)
        for event, variable in table.items():
            _check_space(self.space, event, variable)
            for i, v in enumerate(variable.values):
                if event.mask >> i & 1 and v != 0:
                    raise ValueError(
                        f"uncertainty for {event!r} must vanish on the event"
                    )
                if v < 0 or (self.strict and v > 1):
                    raise ValueError(
                        f"uncertainty value {v} for {event!r} is out of range"
                    )

    def value_at(self, event: Event) -> RandomVariable:
        _check_space(self.space, event)
        try:
            return self.table[event]
        except KeyError:
            raise FamilyDomainError(
                f"no uncertainty entry for {event!r}"
            ) from None

    @classmethod
    def tabulate(cls, family: UncertaintyFamily) -> ExplicitFamily:
        """Materialize any family over the full powerset (small spaces)."""
        space = family.space
        check_budget(space.size, EVENT_SCAN_CAP, "ExplicitFamily.tabulate")
        return cls(
            space,
            {event: family.value_at(event) for event in space.events()},
        )


def family_value(family: UncertaintyFamily, event: Event) -> RandomVariable:
    """Uncertainty variable the family attaches to `event`."""
    return family.value_at(event)


def family_violations(family: UncertaintyFamily) -> list[str]:
    """Exhaustive check of the family axioms; empty list means all hold.

    Verifies, for every event, that the variable vanishes on the event and
    stays inside [0, 1], and that adding one outcome to an event never
    raises the variable anywhere.  Requires a total family and a small
    space.
    """
    space = family.space
    check_budget(space.size, FAMILY_SCAN_CAP, "family_violations")
    full = space.full_mask
    values = [family.value_at(Event(space, m)) for m in range(full + 1)]
    problems: list[str] = []
    for m in range(full + 1):
        variable = values[m]
        for i, v in enumerate(variable.values):
            if m >> i & 1 and v != 0:
                problems.append(f"value on own event: {Event(space, m)!r}")
                break
            if not 0 <= v <= 1:
                problems.append(f"value {v} out of [0, 1]: {Event(space, m)!r}")
                break
        for i in range(space.size):
            if m >> i & 1:
                continue
            bigger = m | 1 << i
            if not values[bigger].leq(variable):
                problems.append(
                    f"not non-increasing: {Event(space, m)!r} -> "
                    f"{Event(space, bigger)!r}"
                )
    return problems


def interval_measure(
    measure: ProbMeasure, family: UncertaintyFamily, event: Event
) -> Interval:
    """Interval [P(H), P(H) + E[Y_H]] attached to the event.

    For a partition-indicator family the upper endpoint is one minus the
    mass of the weak complement.
    """
    _check_space(measure.space, family, event)
    lo = measure(event)
    return Interval(lo, lo + measure.expectation(family.value_at(event)))


@dataclass(frozen=True)
class IntervalMeasureTable:
    """Total map from events to intervals over the full powerset.

    Construction validates the interval-measure axioms: the lower endpoint
    is additive (zero at the empty set, one at the full space) and widths
    never grow along inclusions.
    """

    space: SampleSpace
    entries: tuple[Interval, ...]

    def __post_init__(self):
        check_budget(self.space.size, EVENT_SCAN_CAP, "IntervalMeasureTable")
        full = self.space.full_mask
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != full + 1:
            raise ValueError(
                f"partial table: expected {full + 1} entries, got {len(entries)}"
            )
        if entries[0].lo != 0:
            raise ValueError("empty set must have lower endpoint 0")
        if entries[full] != Interval(_ONE, _ONE):
            raise ValueError("full space must map to [1, 1]")
        singles = [entries[1 << i].lo for i in range(self.space.size)]
        for mask in range(full + 1):
            expected = sum(
                (singles[i] for i in range(self.space.size) if mask >> i & 1),
                _ZERO,
            )
            if entries[mask].lo != expected:
                raise ValueError(
                    f"lower endpoint is not additive at {Event(self.space, mask)!r}"
                )
        for mask in range(full + 1):
            w = entries[mask].width
            for i in range(self.space.size):
                if mask >> i & 1:
                    continue
                if entries[mask | 1 << i].width > w:
                    raise ValueError(
                        f"width grows from {Event(self.space, mask)!r} when "
                        f"adding {self.space.outcomes[i]!r}"
                    )

    def at(self, event: Event) -> Interval:
        _check_space(self.space, event)
        return self.entries[event.mask]

    def lower(self, event: Event) -> Fraction:
        return self.at(event).lo


def build_table(measure: ProbMeasure, family: UncertaintyFamily) -> IntervalMeasureTable:
    """Materialize the interval measure over the full powerset."""
    _check_space(measure.space, family)
    space = measure.space
    check_budget(space.size, EVENT_SCAN_CAP, "build_table")
    entries = tuple(
        interval_measure(measure, family, event) for event in space.events()
    )
    return IntervalMeasureTable(space, entries)


@dataclass(frozen=True)
class PartitionFormResult:
    """Recovered generating pair; `unique` is False when a block is null.

    A null block is invisible in the table, so other partitions reproduce
    the same table and the recovery is only one representative.
    """

    measure: ProbMeasure
    partition: Partition
    unique: bool


def recover_partition_form(table: IntervalMeasureTable) -> PartitionFormResult | None:
    """Recover (P, Z) when the table is induced by a partition indicator.

    Collects the distinguished events whose interval and complement
    interval both reach 1 symmetrically, verifies they form a subalgebra,
    checks the within-atom and cross-atom width identities on its atoms,
    and finally replays the construction; any failure returns None.
    """
    space = table.space
    full = space.full_mask
    entries = table.entries

    members = {0}
    for m in range(1, full + 1):
        q, qc = entries[m], entries[full ^ m]
        if q.hi == 1 and qc.hi == 1 and qc.lo == 1 - q.lo:
            members.add(m)
    if full not in members:
        return None

    nonempty = sorted(members - {0}, key=int.bit_count)
    atoms: list[int] = []
    for m in nonempty:
        if not any(a != m and a & ~m == 0 for a in nonempty):
            atoms.append(m)

    union = 0
    for a in atoms:
        if union & a:
            return None
        union |= a
    if union != full:
        return None
    atom_unions = set()
    for combo in range(1 << len(atoms)):
        u = 0
        for i, a in enumerate(atoms):
            if combo >> i & 1:
                u |= a
        atom_unions.add(u)
    if atom_unions != members:
        return None

    for a in atoms:
        sub = a
        while sub:
            rest = a & ~sub
            if entries[sub].hi != 1 - entries[rest].lo:
                return None
            sub = (sub - 1) & a

    for a in atoms:
        weight_a = entries[a].lo
        for w in members:
            if w == 0 or w & a:
                continue
            h = a
            while h:
                k = w
                while k:
                    if entries[h | k].width + weight_a != entries[k].width:
                        return None
                    k = (k - 1) & w
                h = (h - 1) & a

    try:
        measure = ProbMeasure(
            space, tuple(entries[1 << i].lo for i in range(space.size))
        )
        partition = Partition(
            space, tuple(Event(space, a) for a in sorted(atoms))
        )
    except (ValueError, SpaceMismatchError):
        return None

    rebuilt = build_table(measure, PartitionIndicator(partition))
    if rebuilt.entries != entries:
        return None
    unique = all(measure(block) > 0 for block in partition.blocks)
    return PartitionFormResult(measure, partition, unique)


def _singleton_complement_widths(table: IntervalMeasureTable) -> list[Fraction]:
    full = table.space.full_mask
    widths = []
    for i in range(table.space.size):
        lo = table.entries[1 << i].lo
        if lo == 0:
            raise HypothesisError(
                f"outcome {table.space.outcomes[i]!r} has zero lower "
                "probability; the width criterion does not apply"
            )
        widths.append(table.entries[full ^ (1 << i)].width)
    return widths


def width_superadditivity(table: IntervalMeasureTable) -> bool:
    """Width criterion for representability by an uncertainty family.

    True iff, for every set of outcomes, the width at the complement of
    the set dominates the summed widths at the complements of its
    singletons.  Requires every singleton to carry positive lower
    probability; otherwise the check is inapplicable and raises.
    """
    widths = _singleton_complement_widths(table)
    space = table.space
    full = space.full_mask
    for mask in range(full + 1):
        total = _ZERO
        m = mask
        while m:
            low = m & -m
            total += widths[low.bit_length() - 1]
            m ^= low
        if table.entries[full ^ mask].width < total:
            return False
    return True


def reconstruct_family(table: IntervalMeasureTable) -> ExplicitFamily:
    """Build an uncertainty family whose table is exactly `table`.

    Each event's variable spreads the leftover width uniformly over the
    complement after accounting for the widths pinned down by the
    single-outcome complements; expectations then reproduce the table
    exactly.  The construction can overshoot 1 on low-mass outcomes, so
    the result is a non-strict explicit family.
    """
    if not width_superadditivity(table):
        raise ValueError(
            "table widths are not superadditive; no uncertainty family "
            "reproduces it"
        )
    space = table.space
    full = space.full_mask
    widths = _singleton_complement_widths(table)
    ratios = [
        widths[i] / table.entries[1 << i].lo for i in range(space.size)
    ]

    entries: dict[Event, RandomVariable] = {}
    for mask in range(full + 1):
        comp = full ^ mask
        residue = table.entries[mask].width
        values = [_ZERO] * space.size
        m = comp
        while m:
            low = m & -m
            residue -= widths[low.bit_length() - 1]
            m ^= low
        comp_mass = table.entries[comp].lo
        if comp_mass == 0:
            if residue != 0:
                raise ValueError(
                    "leftover width on a null complement cannot be realized"
                )
            rate = _ZERO
        else:
            rate = residue / comp_mass
        m = comp
        while m:
            low = m & -m
            i = low.bit_length() - 1
            values[i] = rate + ratios[i]
            m ^= low
        entries[Event(space, mask)] = RandomVariable(space, tuple(values))
    return ExplicitFamily(space, entries, strict=False)
