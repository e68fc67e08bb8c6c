import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import pytest

from iprob import (
    Event,
    Partition,
    PartitionIndicator,
    ProbMeasure,
    SampleSpace,
)

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"


@dataclass(frozen=True)
class Umbrella:
    space: SampleSpace
    partition: Partition
    alt_partition: Partition
    measure: ProbMeasure
    family: PartitionIndicator

    def event(self, *labels: str) -> Event:
        return self.space.event(*labels)


@pytest.fixture
def umbrella() -> Umbrella:
    space = SampleSpace(("w01", "w10", "w00", "w11"))
    partition = Partition.of(space, [["w01", "w10"], ["w00", "w11"]])
    alt = Partition.of(space, [["w01"], ["w10"], ["w00", "w11"]])
    measure = ProbMeasure.from_weights(
        space, {"w01": "1/5", "w10": "3/10", "w00": "1/4", "w11": "1/4"}
    )
    return Umbrella(space, partition, alt, measure, PartitionIndicator(partition))


def random_space(rng: random.Random, size: int) -> SampleSpace:
    return SampleSpace(tuple(f"o{i}" for i in range(size)))


def random_partition(rng: random.Random, space: SampleSpace) -> Partition:
    n = space.size
    block_count = rng.randint(1, n)
    assignment = [rng.randrange(block_count) for _ in range(n)]
    # force every block label to appear at least once
    for b in range(block_count):
        if b not in assignment:
            assignment[rng.randrange(n)] = b
    masks = {}
    for i, b in enumerate(assignment):
        masks[b] = masks.get(b, 0) | 1 << i
    return Partition(space, tuple(Event(space, m) for m in sorted(masks.values())))


def random_measure(
    rng: random.Random, space: SampleSpace, positive: bool = True
) -> ProbMeasure:
    lo = 1 if positive else 0
    raw = [rng.randint(lo, 20) for _ in range(space.size)]
    if sum(raw) == 0:
        raw[rng.randrange(space.size)] = 1
    total = sum(raw)
    return ProbMeasure(space, tuple(Fraction(r, total) for r in raw))


def random_event(rng: random.Random, space: SampleSpace) -> Event:
    return Event(space, rng.randrange(space.full_mask + 1))
