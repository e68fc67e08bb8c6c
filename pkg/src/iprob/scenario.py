"""Scenario documents: named spaces, partitions, measures, events, families.

A scenario is a single UTF-8 JSON document.  Rationals are strings like
"3/10" or exact decimal strings like "0.25"; JSON floats are rejected so
the file can never smuggle in rounding error.  A partition named "Z" may
carry a sibling key "Z.cover": true to permit overlapping blocks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Event, Partition, SampleSpace
from .errors import ScenarioError
from .measures import (
    AlphaFamily,
    ExplicitFamily,
    PartitionIndicator,
    ProbMeasure,
    RandomVariable,
    ScaledComplement,
    UncertaintyFamily,
)

__all__ = ["FamilySpec", "ScenarioFile", "parse_scenario", "render_scenario"]

_FAMILY_KINDS = ("partition", "scaled", "alpha", "explicit")


@dataclass(frozen=True)
class FamilySpec:
    """Normalized family descriptor as written in a scenario document."""

    kind: str
    partition: str | None = None
    scale: Fraction | None = None
    alpha: tuple[tuple[int, tuple[tuple[str, Fraction], ...]], ...] | None = None
    table: tuple[tuple[str, str], ...] | None = None


@dataclass(frozen=True)
class ScenarioFile:
    space: SampleSpace
    partitions: dict[str, Partition]
    measures: dict[str, ProbMeasure]
    events: dict[str, Event]
    random_variables: dict[str, RandomVariable]
    family_specs: dict[str, FamilySpec]
    _family_cache: dict = field(
        default_factory=dict, compare=False, repr=False
    )

    def partition(self, name: str) -> Partition:
        return self._lookup("partitions", self.partitions, name)

    def measure(self, name: str) -> ProbMeasure:
        return self._lookup("measures", self.measures, name)

    def event(self, name: str) -> Event:
        return self._lookup("events", self.events, name)

    def random_variable(self, name: str) -> RandomVariable:
        return self._lookup("random_variables", self.random_variables, name)

    def family(self, name: str) -> UncertaintyFamily:
        if name in self._family_cache:
            return self._family_cache[name]
        spec = self._lookup("families", self.family_specs, name)
        built = self._build_family(name, spec)
        self._family_cache[name] = built
        return built

    @staticmethod
    def _lookup(category: str, table: dict, name: str):
        try:
            return table[name]
        except KeyError:
            raise ScenarioError(category, f"unknown name {name!r}") from None

    def _build_family(self, name: str, spec: FamilySpec) -> UncertaintyFamily:
        where = f"families.{name}"
        if spec.kind == "partition":
            return PartitionIndicator(self.partition(spec.partition))
        if spec.kind == "scaled":
            return ScaledComplement(self.space, spec.scale)
        if spec.kind == "alpha":
            partition = self.partition(spec.partition)
            by_block = {i: dict(entries) for i, entries in spec.alpha}
            mask_to_name = {
                event.mask: ev_name for ev_name, event in self.events.items()
            }

            def alpha(i: int, event: Event) -> Fraction:
                ev_name = mask_to_name.get(event.mask)
                entries = by_block.get(i, {})
                if ev_name is None or ev_name not in entries:
                    raise ScenarioError(
                        where,
                        f"no alpha weight for block {i} at event "
                        f"{{{', '.join(event.labels)}}}",
                    )
                return entries[ev_name]

            return AlphaFamily(partition, alpha)
        if spec.kind == "explicit":
            table = {
                self.event(ev_name): self.random_variable(rv_name)
                for ev_name, rv_name in spec.table
            }
            return ExplicitFamily(self.space, table)
        raise ScenarioError(where, f"unknown family kind {spec.kind!r}")


def _reject_float(text: str):
    raise ScenarioError(
        "document", f"float literal {text!r} is not exact; write it as a string"
    )


def _catch_duplicates(pairs):
    seen = set()
    out = {}
    for key, value in pairs:
        if key in seen:
            raise ScenarioError("document", f"duplicate name {key!r}")
        seen.add(key)
        out[key] = value
    return out


def _rational(where: str, value) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ScenarioError(where, f"expected a rational string, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ScenarioError(where, f"bad rational {value!r}: {exc}") from None


def _expect_object(where: str, value) -> dict:
    if not isinstance(value, dict):
        raise ScenarioError(where, "expected a JSON object")
    return value


def _expect_list(where: str, value) -> list:
    if not isinstance(value, list):
        raise ScenarioError(where, "expected a JSON array")
    return value


def _labels(where: str, space: SampleSpace, value) -> Event:
    items = _expect_list(where, value)
    mask = 0
    for label in items:
        if not isinstance(label, str):
            raise ScenarioError(where, f"labels must be strings, got {label!r}")
        try:
            mask |= 1 << space.index(label)
        except KeyError:
            raise ScenarioError(where, f"unknown label {label!r}") from None
    return Event(space, mask)


def parse_scenario(text: str) -> ScenarioFile:
    """Parse and validate a scenario document, or raise ScenarioError."""
    try:
        raw = json.loads(
            text, parse_float=_reject_float, object_pairs_hook=_catch_duplicates
        )
    except json.JSONDecodeError as exc:
        raise ScenarioError(
            "document", f"not valid JSON (line {exc.lineno}): {exc.msg}"
        ) from None
    root = _expect_object("document", raw)
    known = {
        "outcomes",
        "partitions",
        "measures",
        "events",
        "random_variables",
        "families",
    }
    for key in root:
        if key not in known:
            raise ScenarioError(key, "unknown top-level key")

    outcomes = _expect_list("outcomes", root.get("outcomes"))
    if not all(isinstance(o, str) for o in outcomes):
        raise ScenarioError("outcomes", "labels must be strings")
    try:
        space = SampleSpace(tuple(outcomes))
    except ValueError as exc:
        raise ScenarioError("outcomes", str(exc)) from None

    partitions: dict[str, Partition] = {}
    raw_partitions = _expect_object("partitions", root.get("partitions", {}))
    cover_flags = {}
    for name, value in raw_partitions.items():
        if name.endswith(".cover"):
            if value is not True:
                raise ScenarioError(
                    f"partitions.{name}", "cover marker must be true"
                )
            cover_flags[name[: -len(".cover")]] = True
            continue
        if "." in name:
            raise ScenarioError(
                f"partitions.{name}", "partition names must not contain '.'"
            )
    for name, value in raw_partitions.items():
        if name.endswith(".cover"):
            base = name[: -len(".cover")]
            if base not in raw_partitions:
                raise ScenarioError(
                    f"partitions.{name}", f"no partition named {base!r}"
                )
            continue
        where = f"partitions.{name}"
        blocks = [
            _labels(f"{where}[{i}]", space, raw_block)
            for i, raw_block in enumerate(_expect_list(where, value))
        ]
        try:
            partitions[name] = Partition(
                space, tuple(blocks), is_cover=cover_flags.get(name, False)
            )
        except ValueError as exc:
            raise ScenarioError(where, str(exc)) from None

    measures: dict[str, ProbMeasure] = {}
    for name, value in _expect_object("measures", root.get("measures", {})).items():
        where = f"measures.{name}"
        entries = _expect_object(where, value)
        weights = {
            label: _rational(f"{where}.{label}", w) for label, w in entries.items()
        }
        try:
            measures[name] = ProbMeasure.from_weights(space, weights)
        except ValueError as exc:
            raise ScenarioError(where, str(exc)) from None

    events: dict[str, Event] = {}
    for name, value in _expect_object("events", root.get("events", {})).items():
        events[name] = _labels(f"events.{name}", space, value)

    random_variables: dict[str, RandomVariable] = {}
    raw_rvs = _expect_object("random_variables", root.get("random_variables", {}))
    for name, value in raw_rvs.items():
        where = f"random_variables.{name}"
        entries = _expect_object(where, value)
        values = {
            label: _rational(f"{where}.{label}", v) for label, v in entries.items()
        }
        try:
            random_variables[name] = RandomVariable.from_values(space, values)
        except ValueError as exc:
            raise ScenarioError(where, str(exc)) from None

    family_specs: dict[str, FamilySpec] = {}
    for name, value in _expect_object("families", root.get("families", {})).items():
        where = f"families.{name}"
        entries = _expect_object(where, value)
        kind = entries.get("kind")
        if kind not in _FAMILY_KINDS:
            raise ScenarioError(
                where, f"kind must be one of {_FAMILY_KINDS}, got {kind!r}"
            )
        if kind == "partition":
            ref = entries.get("partition")
            if ref not in partitions:
                raise ScenarioError(where, f"unknown partition {ref!r}")
            family_specs[name] = FamilySpec(kind="partition", partition=ref)
        elif kind == "scaled":
            scale = _rational(f"{where}.r", entries.get("r"))
            if not 0 < scale < 1:
                raise ScenarioError(
                    f"{where}.r", "scale must lie strictly between 0 and 1"
                )
            family_specs[name] = FamilySpec(kind="scaled", scale=scale)
        elif kind == "alpha":
            ref = entries.get("partition")
            if ref not in partitions:
                raise ScenarioError(where, f"unknown partition {ref!r}")
            raw_alpha = _expect_object(f"{where}.alpha", entries.get("alpha"))
            normalized = []
            for block_key, per_event in raw_alpha.items():
                try:
                    index = int(block_key)
                except ValueError:
                    raise ScenarioError(
                        f"{where}.alpha", f"block index {block_key!r} is not an integer"
                    ) from None
                if not 0 <= index < len(partitions[ref].blocks):
                    raise ScenarioError(
                        f"{where}.alpha", f"block index {index} out of range"
                    )
                per = _expect_object(f"{where}.alpha.{block_key}", per_event)
                weights = []
                for ev_name, w in per.items():
                    if ev_name not in events:
                        raise ScenarioError(
                            f"{where}.alpha.{block_key}",
                            f"unknown event {ev_name!r}",
                        )
                    weight = _rational(f"{where}.alpha.{block_key}.{ev_name}", w)
                    if not 0 <= weight <= 1:
                        raise ScenarioError(
                            f"{where}.alpha.{block_key}.{ev_name}",
                            f"alpha weight {weight} outside [0, 1]",
                        )
                    weights.append((ev_name, weight))
                normalized.append((index, tuple(weights)))
            family_specs[name] = FamilySpec(
                kind="alpha", partition=ref, alpha=tuple(normalized)
            )
        else:
            raw_table = _expect_object(f"{where}.table", entries.get("table"))
            pairs = []
            for ev_name, rv_name in raw_table.items():
                if ev_name not in events:
                    raise ScenarioError(
                        f"{where}.table", f"unknown event {ev_name!r}"
                    )
                if rv_name not in random_variables:
                    raise ScenarioError(
                        f"{where}.table", f"unknown random variable {rv_name!r}"
                    )
                pairs.append((ev_name, rv_name))
            family_specs[name] = FamilySpec(kind="explicit", table=tuple(pairs))

    scenario = ScenarioFile(
        space=space,
        partitions=partitions,
        measures=measures,
        events=events,
        random_variables=random_variables,
        family_specs=family_specs,
    )
    for name, spec in family_specs.items():
        if spec.kind == "explicit":
            try:
                scenario.family(name)
            except ValueError as exc:
                raise ScenarioError(f"families.{name}", str(exc)) from None
    return scenario


def render_scenario(scenario: ScenarioFile) -> str:
    """Serialize back to the document format; parse(render(s)) == s."""
    doc: dict = {"outcomes": list(scenario.space.outcomes)}
    partitions: dict = {}
    for name, partition in scenario.partitions.items():
        partitions[name] = [list(block.labels) for block in partition.blocks]
        if partition.is_cover:
            partitions[f"{name}.cover"] = True
    doc["partitions"] = partitions
    doc["measures"] = {
        name: {
            label: str(measure.weight(label))
            for label in scenario.space.outcomes
        }
        for name, measure in scenario.measures.items()
    }
    doc["events"] = {
        name: list(event.labels) for name, event in scenario.events.items()
    }
    doc["random_variables"] = {
        name: {
            label: str(rv.value(label)) for label in scenario.space.outcomes
        }
        for name, rv in scenario.random_variables.items()
    }
    families: dict = {}
    for name, spec in scenario.family_specs.items():
        if spec.kind == "partition":
            families[name] = {"kind": "partition", "partition": spec.partition}
        elif spec.kind == "scaled":
            families[name] = {"kind": "scaled", "r": str(spec.scale)}
        elif spec.kind == "alpha":
            families[name] = {
                "kind": "alpha",
                "partition": spec.partition,
                "alpha": {
                    str(index): {ev: str(w) for ev, w in weights}
                    for index, weights in spec.alpha
                },
            }
        else:
            families[name] = {"kind": "explicit", "table": dict(spec.table)}
    doc["families"] = families
    return json.dumps(doc, indent=2)
