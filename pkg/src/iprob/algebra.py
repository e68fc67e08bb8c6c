"""Finite set algebra with partition-induced weak complementation.

A partition Z of the sample space induces a "weak complement" of an event H:
inside every block that H touches, the outcomes outside H count against H,
while blocks untouched by H stay undecided.  The undecided blocks form the
uncertainty set of H; H, its weak complement and its uncertainty set always
partition the space.

Events are value-semantic bit-per-outcome subsets; outcome order is fixed by
the declaration order of the sample space.  Every type here is immutable and
every operation is a pure function, so instances can be shared freely across
threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, Mapping

from .errors import SpaceMismatchError
from .limits import EVENT_SCAN_CAP, TRIPLE_SCAN_CAP, check_budget

__all__ = [
    "SampleSpace",
    "Event",
    "Partition",
    "ComplementationTable",
    "Violation",
    "WeakComplementationReport",
    "DeMorganReport",
    "LatticeAxiomReport",
    "psi",
    "uncertainty_set",
    "verify_weak_complementation",
    "de_morgan_report",
    "lattice_union",
    "lattice_meet",
    "lattice_leq",
    "lattice_axiom_report",
]


@dataclass(frozen=True)
class SampleSpace:
    """Ordered collection of distinct, non-empty outcome labels."""

    outcomes: tuple[str, ...]

    def __post_init__(self):
        outcomes = tuple(self.outcomes)
        object.__setattr__(self, "outcomes", outcomes)
        if not outcomes:
            raise ValueError("a sample space needs at least one outcome")
        if any(not isinstance(o, str) or not o for o in outcomes):
            raise ValueError("outcome labels must be non-empty strings")
        if len(set(outcomes)) != len(outcomes):
            raise ValueError("outcome labels must be unique")

    @property
    def size(self) -> int:
        return len(self.outcomes)

    def __len__(self) -> int:
        return len(self.outcomes)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.outcomes)) - 1

    @cached_property
    def _index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.outcomes)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown outcome {label!r}") from None

    def event(self, *labels: str) -> Event:
        mask = 0
        for label in labels:
            mask |= 1 << self.index(label)
        return Event(self, mask)

    def event_of(self, labels: Iterable[str]) -> Event:
        return self.event(*labels)

    @property
    def empty(self) -> Event:
        return Event(self, 0)

    @property
    def full(self) -> Event:
        return Event(self, self.full_mask)

    def events(self) -> Iterator[Event]:
        """All 2^N events, in mask order."""
        for mask in range(self.full_mask + 1):
            yield Event(self, mask)


@dataclass(frozen=True)
class Event:
    """Subset of a sample space, stored as one bit per outcome."""

    space: SampleSpace
    mask: int

    def __post_init__(self):
        if not 0 <= self.mask <= self.space.full_mask:
            raise ValueError("event mask out of range for its sample space")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(
            o for i, o in enumerate(self.space.outcomes) if self.mask >> i & 1
        )

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __contains__(self, label: str) -> bool:
        return bool(self.mask >> self.space.index(label) & 1)

    def _check(self, other: Event) -> None:
        if self.space != other.space:
            raise SpaceMismatchError(
                "events belong to different sample spaces"
            )

    def complement(self) -> Event:
        return Event(self.space, self.space.full_mask ^ self.mask)

    def __or__(self, other: Event) -> Event:
        self._check(other)
        return Event(self.space, self.mask | other.mask)

    def __and__(self, other: Event) -> Event:
        self._check(other)
        return Event(self.space, self.mask & other.mask)

    def __sub__(self, other: Event) -> Event:
        self._check(other)
        return Event(self.space, self.mask & ~other.mask)

    def is_subset_of(self, other: Event) -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def is_disjoint_from(self, other: Event) -> bool:
        self._check(other)
        return self.mask & other.mask == 0

    def __repr__(self) -> str:
        return "Event({%s})" % ", ".join(self.labels)


@dataclass(frozen=True)
class Partition:
    """Ordered list of non-empty events covering the space.

    Blocks must be pairwise disjoint unless the instance is built through
    `Partition.cover`, which permits overlaps; overlapping covers induce a
    weak complementation that is not regular, so the flag taints any
    regularity claim downstream.  Block order is preserved but carries no
    meaning: every operation is invariant under block permutation.
    """

    space: SampleSpace
    blocks: tuple[Event, ...]
    is_cover: bool = False

    def __post_init__(self):
        blocks = tuple(self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if not blocks:
            raise ValueError("a partition needs at least one block")
        union = 0
        for i, block in enumerate(blocks):
            if block.space != self.space:
                raise SpaceMismatchError("partition block from a foreign space")
            if not block:
                raise ValueError(f"block {i} is empty")
            union |= block.mask
        if union != self.space.full_mask:
            raise ValueError("blocks do not cover the sample space")
        if not self.is_cover:
            seen = 0
            for i, block in enumerate(blocks):
                if seen & block.mask:
                    raise ValueError(
                        f"block {i} overlaps an earlier block; "
                        "use Partition.cover for overlapping blocks"
                    )
                seen |= block.mask

    @classmethod
    def of(cls, space: SampleSpace, blocks: Iterable[Iterable[str]]) -> Partition:
        return cls(space, tuple(space.event(*b) for b in blocks))

    @classmethod
    def cover(cls, space: SampleSpace, blocks: Iterable[Iterable[str]]) -> Partition:
        return cls(space, tuple(space.event(*b) for b in blocks), is_cover=True)

    def __len__(self) -> int:
        return len(self.blocks)

    def refines(self, other: Partition) -> bool:
        """True when every block here sits inside some block of `other`."""
        if self.space != other.space:
            raise SpaceMismatchError("partitions over different spaces")
        return all(
            any(b.mask & ~c.mask == 0 for c in other.blocks) for b in self.blocks
        )


def _check_space(space: SampleSpace, *items) -> None:
    for item in items:
        if item.space != space:
            raise SpaceMismatchError("operands belong to different sample spaces")


def _psi_mask(event_mask: int, partition: Partition) -> int:
    comp = partition.space.full_mask & ~event_mask
    out = 0
    for block in partition.blocks:
        if block.mask & event_mask:
            out |= comp & block.mask
    return out


def psi(event: Event, partition: Partition) -> Event:
    """Weak complement of `event` relative to the partition.

    Union, over the blocks that `event` meets, of the part of the block
    lying outside `event`.  Always a subset of the plain complement.
    """
    _check_space(partition.space, event)
    return Event(partition.space, _psi_mask(event.mask, partition))


def uncertainty_set(event: Event, partition: Partition) -> Event:
    """Outcomes deciding neither for `event` nor for its weak complement.

    Computed as complement(event) minus psi(event), which for a disjoint
    partition equals the union of the blocks that `event` misses.  Together
    with `event` and `psi(event)` it partitions the space.
    """
    _check_space(partition.space, event)
    space = partition.space
    p = _psi_mask(event.mask, partition)
    return Event(space, space.full_mask & ~event.mask & ~p)


@dataclass(frozen=True)
class ComplementationTable:
    """Total map from events to events over the full powerset.

    `images[mask]` is the image mask of the event with that mask.  Only
    small spaces are supported since the table is powerset-sized.
    """

    space: SampleSpace
    images: tuple[int, ...]

    def __post_init__(self):
        check_budget(self.space.size, EVENT_SCAN_CAP, "ComplementationTable")
        full = self.space.full_mask
        if len(self.images) != full + 1:
            raise ValueError(
                f"partial table: expected {full + 1} entries, got {len(self.images)}"
            )
        if any(not 0 <= m <= full for m in self.images):
            raise ValueError("table image out of range")

    @classmethod
    def from_partition(cls, partition: Partition) -> ComplementationTable:
        space = partition.space
        check_budget(space.size, EVENT_SCAN_CAP, "ComplementationTable")
        images = tuple(
            _psi_mask(mask, partition) for mask in range(space.full_mask + 1)
        )
        return cls(space, images)

    @classmethod
    def from_callable(
        cls, space: SampleSpace, fn: Callable[[Event], Event]
    ) -> ComplementationTable:
        check_budget(space.size, EVENT_SCAN_CAP, "ComplementationTable")
        images = []
        for mask in range(space.full_mask + 1):
            image = fn(Event(space, mask))
            _check_space(space, image)
            images.append(image.mask)
        return cls(space, tuple(images))

    @classmethod
    def from_mapping(
        cls, space: SampleSpace, mapping: Mapping[Event, Event]
    ) -> ComplementationTable:
        check_budget(space.size, EVENT_SCAN_CAP, "ComplementationTable")
        images = [-1] * (space.full_mask + 1)
        for key, image in mapping.items():
            _check_space(space, key, image)
            images[key.mask] = image.mask
        if -1 in images:
            missing = images.index(-1)
            raise ValueError(
                f"partial table: no image for {Event(space, missing)!r}"
            )
        return cls(space, tuple(images))

    @classmethod
    def classical(cls, space: SampleSpace) -> ComplementationTable:
        full = space.full_mask
        return cls(space, tuple(full ^ m for m in range(full + 1)))

    def image_of(self, event: Event) -> Event:
        _check_space(self.space, event)
        return Event(self.space, self.images[event.mask])


@dataclass(frozen=True)
class Violation:
    """One violated axiom instance; `events` holds the offending event(s)."""

    condition: str
    events: tuple[Event, ...]


@dataclass(frozen=True)
class WeakComplementationReport:
    is_weak: bool
    is_regular: bool
    witnesses: tuple[Violation, ...]


def verify_weak_complementation(table: ComplementationTable) -> WeakComplementationReport:
    """Exhaustively check the weak-complementation axioms on a full table.

    Weakness requires the image to stay inside the plain complement
    ("complement_bound") and the residual uncertainty sets to shrink as
    events grow ("uncertainty_antitone").  Regularity additionally requires
    the double image to fall back inside the original event
    ("double_complement").  Witnesses record every violated instance.
    """
    space = table.space
    check_budget(space.size, EVENT_SCAN_CAP, "verify_weak_complementation")
    full = space.full_mask
    images = table.images
    witnesses: list[Violation] = []
    bound_ok = True
    antitone_ok = True
    double_ok = True

    residual = [full & ~m & ~images[m] for m in range(full + 1)]

    for m in range(full + 1):
        if images[m] & m:
            bound_ok = False
            witnesses.append(Violation("complement_bound", (Event(space, m),)))
        if images[images[m]] & ~m & full:
            double_ok = False
            witnesses.append(Violation("double_complement", (Event(space, m),)))

    for k in range(full + 1):
        sub = k
        while sub:
            sub = (sub - 1) & k
            if residual[k] & ~residual[sub]:
                antitone_ok = False
                witnesses.append(
                    Violation(
                        "uncertainty_antitone",
                        (Event(space, sub), Event(space, k)),
                    )
                )
            if sub == 0:
                break

    is_weak = bound_ok and antitone_ok
    return WeakComplementationReport(
        is_weak=is_weak,
        is_regular=is_weak and double_ok,
        witnesses=tuple(witnesses),
    )


@dataclass(frozen=True)
class DeMorganReport:
    """Both routes to each side of the four De-Morgan-style identities.

    For each identity the `*_direct` field applies the weak complement to
    the combined event (or combines the two images), while the `*_formula`
    field evaluates the block-wise closed form.  The two containments state
    that the image of a union swallows the meet of the images and that the
    image of an intersection sits inside the join of the images; both can
    be strict, which is exactly how the classical De Morgan rules fail.
    """

    psi_of_union_direct: Event
    psi_of_union_formula: Event
    meet_of_images_direct: Event
    meet_of_images_formula: Event
    psi_of_intersection_direct: Event
    psi_of_intersection_formula: Event
    join_of_images_direct: Event
    join_of_images_formula: Event
    meet_contained_in_psi_of_union: bool
    meet_containment_strict: bool
    psi_of_intersection_contained_in_join: bool
    intersection_containment_strict: bool

    @property
    def identities_hold(self) -> bool:
        return (
            self.psi_of_union_direct == self.psi_of_union_formula
            and self.meet_of_images_direct == self.meet_of_images_formula
            and self.psi_of_intersection_direct == self.psi_of_intersection_formula
            and self.join_of_images_direct == self.join_of_images_formula
        )


def de_morgan_report(event_h: Event, event_k: Event, partition: Partition) -> DeMorganReport:
    """Evaluate the four image identities and the two containments."""
    space = partition.space
    _check_space(space, event_h, event_k)
    h, k = event_h.mask, event_k.mask
    full = space.full_mask
    hc, kc = full ^ h, full ^ k

    psi_union_direct = _psi_mask(h | k, partition)
    psi_inter_direct = _psi_mask(h & k, partition)
    psi_h = _psi_mask(h, partition)
    psi_k = _psi_mask(k, partition)

    blocks_either = 0
    blocks_both = 0
    j_mask = 0
    inter_formula = 0
    join_both = 0
    for block in partition.blocks:
        b = block.mask
        meets_h = bool(b & h)
        meets_k = bool(b & k)
        if meets_h or meets_k:
            blocks_either |= b
        if meets_h and meets_k:
            blocks_both |= b
            join_both |= (hc | kc) & b
        if meets_h and not meets_k:
            j_mask |= hc & b
        if meets_k and not meets_h:
            j_mask |= kc & b
        if b & h & k:
            inter_formula |= (hc | kc) & b

    psi_union_formula = hc & kc & blocks_either
    meet_formula = hc & kc & blocks_both
    join_formula = j_mask | join_both

    meet_direct = psi_h & psi_k
    join_direct = psi_h | psi_k

    meet_contained = meet_direct & ~psi_union_direct == 0
    inter_contained = psi_inter_direct & ~join_direct == 0

    ev = lambda m: Event(space, m)
    return DeMorganReport(
        psi_of_union_direct=ev(psi_union_direct),
        psi_of_union_formula=ev(psi_union_formula),
        meet_of_images_direct=ev(meet_direct),
        meet_of_images_formula=ev(meet_formula),
        psi_of_intersection_direct=ev(psi_inter_direct),
        psi_of_intersection_formula=ev(inter_formula),
        join_of_images_direct=ev(join_direct),
        join_of_images_formula=ev(join_formula),
        meet_contained_in_psi_of_union=meet_contained,
        meet_containment_strict=meet_contained and meet_direct != psi_union_direct,
        psi_of_intersection_contained_in_join=inter_contained,
        intersection_containment_strict=inter_contained and psi_inter_direct != join_direct,
    )


def lattice_union(event_h: Event, event_k: Event, partition: Partition) -> Event:
    """Join of the modified lattice: complement of psi of the plain union."""
    _check_space(partition.space, event_h, event_k)
    space = partition.space
    return Event(
        space, space.full_mask ^ _psi_mask(event_h.mask | event_k.mask, partition)
    )


def lattice_meet(event_h: Event, event_k: Event, partition: Partition) -> Event:
    """Meet of the modified lattice, which is plain intersection."""
    _check_space(partition.space, event_h, event_k)
    return event_h & event_k


def lattice_leq(event_h: Event, event_k: Event, partition: Partition) -> bool:
    """Modified order: H below K iff psi(K) is contained in psi(H)."""
    _check_space(partition.space, event_h, event_k)
    return _psi_mask(event_k.mask, partition) & ~_psi_mask(event_h.mask, partition) == 0


@dataclass(frozen=True)
class LatticeAxiomReport:
    complemented: bool
    distributive: bool
    witness: tuple[Event, Event, Event] | None
    empty_is_minimum: bool
    omega_is_maximum: bool


def lattice_axiom_report(partition: Partition) -> LatticeAxiomReport:
    """Exhaustive axioms of the modified lattice.

    Checks, for every event, that joining with its weak complement yields
    the whole space while meeting it yields the empty set, and that the
    double image meets the plain complement trivially.  Searches event
    triples for a failure of meet-over-join distributivity, trying the
    (H, H, psi(H)) family first since that is where failures live when the
    partition has more than one block.  Also reports whether the empty set
    is the minimum and the whole space the maximum of the modified order.
    """
    space = partition.space
    check_budget(space.size, TRIPLE_SCAN_CAP, "lattice_axiom_report")
    full = space.full_mask
    n_events = full + 1
    images = [_psi_mask(m, partition) for m in range(n_events)]

    def join(a: int, b: int) -> int:
        return full ^ images[a | b]

    complemented = all(
        join(h, images[h]) == full
        and h & images[h] == 0
        and images[images[h]] & (full ^ h) == 0
        for h in range(n_events)
    )

    witness: tuple[Event, Event, Event] | None = None
    for h in range(n_events):
        p = images[h]
        if h & join(h, p) != join(h & h, h & p):
            witness = (Event(space, h), Event(space, h), Event(space, p))
            break
    if witness is None:
        for h in range(n_events):
            for k in range(n_events):
                jk = h & k
                for l in range(n_events):
                    if h & join(k, l) != join(jk, h & l):
                        witness = (
                            Event(space, h),
                            Event(space, k),
                            Event(space, l),
                        )
                        break
                if witness:
                    break
            if witness:
                break

    empty_is_minimum = all(images[h] & ~images[0] == 0 for h in range(n_events))
    omega_is_maximum = all(images[full] & ~images[h] == 0 for h in range(n_events))

    return LatticeAxiomReport(
        complemented=complemented,
        distributive=witness is None,
        witness=witness,
        empty_is_minimum=empty_is_minimum,
        omega_is_maximum=omega_is_maximum,
    )
