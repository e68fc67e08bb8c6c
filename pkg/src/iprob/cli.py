"""Command line interface: scenario queries and the built-in demos.

Results go to stdout, diagnostics to stderr; the exit code is 0 exactly
when no error occurred.  Every command maps one to one onto a library
operation and reports the same exact rationals the library returns, with
decimal renderings attached for reading convenience only.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .aggregation import MeasureCollection, coherence_delta, global_uncertainty, hat_q, tilde_q
from .algebra import (
    Event,
    Partition,
    SampleSpace,
    de_morgan_report,
    lattice_axiom_report,
    psi,
    uncertainty_set,
)
from .conditioning import conditional, conditional_psi, is_independent
from .errors import IprobError, ScenarioError
from .measures import (
    Interval,
    PartitionIndicator,
    ProbMeasure,
    UncertaintyFamily,
    build_table,
    interval_measure,
    recover_partition_form,
    width_superadditivity,
)
from .randvar import dominates, interval_cdf, pushforward_law
from .rationals import decimal_str, percent_str
from .scenario import ScenarioFile, parse_scenario

__all__ = ["QueryResult", "run_query", "demo_ipcc", "demo_umbrella", "main"]

COMMANDS = (
    "measure",
    "condition",
    "independent",
    "psi",
    "uncertainty",
    "lattice-check",
    "characterize",
    "prop14",
    "cdf",
    "law",
    "dominates",
    "aggregate",
    "demorgan",
    "demo",
)


@dataclass(frozen=True)
class QueryResult:
    """Kind-tagged result; exactness lives in the rational string fields."""

    kind: str
    payload: dict
    text: str

    def to_json_obj(self) -> dict:
        return {"kind": self.kind, **self.payload}


def _interval_result(interval: Interval) -> QueryResult:
    obj = interval.to_json_obj()
    return QueryResult(
        "interval", obj, f"[{interval.lo}, {interval.hi}]  {obj['decimal']}"
    )


def _event_result(event: Event) -> QueryResult:
    labels = list(event.labels)
    return QueryResult(
        "event", {"labels": labels}, "{%s}" % ", ".join(labels)
    )


def _boolean_result(value: bool) -> QueryResult:
    return QueryResult("boolean", {"value": value}, "true" if value else "false")


def _rational_result(value: Fraction) -> QueryResult:
    return QueryResult(
        "rational",
        {"value": str(value), "decimal": decimal_str(value)},
        f"{value}  ({decimal_str(value)})",
    )


def _report_result(payload: dict, lines: list[str]) -> QueryResult:
    return QueryResult("report", payload, "\n".join(lines))


def _require(options: Mapping[str, str], key: str) -> str:
    value = options.get(key)
    if not value:
        flag = "--" + key.replace("_", "-")
        raise ScenarioError(flag, "required option missing")
    return value


def _family_of(scenario: ScenarioFile, options: Mapping[str, str]) -> UncertaintyFamily:
    if options.get("family"):
        return scenario.family(options["family"])
    if options.get("partition"):
        return PartitionIndicator(scenario.partition(options["partition"]))
    raise ScenarioError("--family/--partition", "one of them is required")


def _member_family(scenario: ScenarioFile, token: str) -> UncertaintyFamily:
    if token in scenario.family_specs:
        return scenario.family(token)
    if token in scenario.partitions:
        return PartitionIndicator(scenario.partition(token))
    raise ScenarioError("--members", f"unknown family or partition {token!r}")


def _rational_option(options: Mapping[str, str], key: str) -> Fraction:
    raw = _require(options, key)
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError):
        flag = "--" + key.replace("_", "-")
        raise ScenarioError(flag, f"bad rational {raw!r}") from None


def run_query(
    scenario: ScenarioFile | None, command: str, options: Mapping[str, str]
) -> QueryResult:
    """Dispatch one command against a parsed scenario."""
    if command == "demo":
        which = _require(options, "which")
        if which == "ipcc":
            return demo_ipcc()
        if which == "umbrella":
            return demo_umbrella(options.get("weights"))
        raise ScenarioError("demo", f"unknown demo {which!r}")
    if scenario is None:
        raise ScenarioError("--scenario", "required for this command")

    if command == "measure":
        return _interval_result(
            interval_measure(
                scenario.measure(_require(options, "measure")),
                _family_of(scenario, options),
                scenario.event(_require(options, "event")),
            )
        )
    if command == "condition":
        measure = scenario.measure(_require(options, "measure"))
        event_a = scenario.event(_require(options, "event_a"))
        given = scenario.event(_require(options, "given"))
        if options.get("family"):
            result = conditional(
                measure, scenario.family(options["family"]), event_a, given
            )
        else:
            result = conditional_psi(
                measure,
                scenario.partition(_require(options, "partition")),
                event_a,
                given,
            )
        return _interval_result(result)
    if command == "independent":
        return _boolean_result(
            is_independent(
                scenario.measure(_require(options, "measure")),
                _family_of(scenario, options),
                scenario.event(_require(options, "event_a")),
                scenario.event(_require(options, "given")),
            )
        )
    if command == "psi":
        return _event_result(
            psi(
                scenario.event(_require(options, "event")),
                scenario.partition(_require(options, "partition")),
            )
        )
    if command == "uncertainty":
        return _event_result(
            uncertainty_set(
                scenario.event(_require(options, "event")),
                scenario.partition(_require(options, "partition")),
            )
        )
    if command == "lattice-check":
        report = lattice_axiom_report(
            scenario.partition(_require(options, "partition"))
        )
        payload = {
            "complemented": report.complemented,
            "distributive": report.distributive,
            "witness": None
            if report.witness is None
            else [list(e.labels) for e in report.witness],
            "empty_is_minimum": report.empty_is_minimum,
            "omega_is_maximum": report.omega_is_maximum,
        }
        lines = [f"{key}: {value}" for key, value in payload.items()]
        return _report_result(payload, lines)
    if command == "characterize":
        table = build_table(
            scenario.measure(_require(options, "measure")),
            _family_of(scenario, options),
        )
        found = recover_partition_form(table)
        if found is None:
            return _report_result(
                {"found": False}, ["no partition-indicator form found"]
            )
        payload = {
            "found": True,
            "unique": found.unique,
            "measure": {
                label: str(found.measure.weight(label))
                for label in found.measure.space.outcomes
            },
            "partition": [list(b.labels) for b in found.partition.blocks],
        }
        lines = [
            "recovered a partition-indicator form",
            f"unique: {found.unique}",
            "blocks: " + "; ".join("{%s}" % ", ".join(b.labels) for b in found.partition.blocks),
        ]
        return _report_result(payload, lines)
    if command == "prop14":
        table = build_table(
            scenario.measure(_require(options, "measure")),
            _family_of(scenario, options),
        )
        return _boolean_result(width_superadditivity(table))
    if command == "cdf":
        return _interval_result(
            interval_cdf(
                scenario.measure(_require(options, "measure")),
                _family_of(scenario, options),
                scenario.random_variable(_require(options, "rv")),
                _rational_option(options, "t"),
            )
        )
    if command == "law":
        raw_values = _require(options, "values")
        try:
            values = [Fraction(tok) for tok in raw_values.split(",") if tok]
        except (ValueError, ZeroDivisionError):
            raise ScenarioError("--values", f"bad rational list {raw_values!r}") from None
        return _interval_result(
            pushforward_law(
                scenario.measure(_require(options, "measure")),
                scenario.partition(_require(options, "partition")),
                scenario.random_variable(_require(options, "rv")),
                values,
            )
        )
    if command == "dominates":
        return _boolean_result(
            dominates(
                scenario.measure(_require(options, "measure")),
                _family_of(scenario, options),
                scenario.random_variable(_require(options, "rv_a")),
                scenario.random_variable(_require(options, "rv_b")),
            )
        )
    if command == "aggregate":
        raw_members = _require(options, "members")
        members = []
        for token in raw_members.split(","):
            token = token.strip()
            if not token:
                continue
            if ":" not in token:
                raise ScenarioError(
                    "--members", f"expected measure:family, got {token!r}"
                )
            m_name, f_name = token.split(":", 1)
            members.append(
                (scenario.measure(m_name), _member_family(scenario, f_name))
            )
        if not members:
            raise ScenarioError("--members", "no members given")
        collection = MeasureCollection(tuple(members))
        event = scenario.event(_require(options, "event"))
        mode = options.get("mode") or "tilde"
        if mode == "tilde":
            return _interval_result(tilde_q(collection, event))
        if mode == "hat":
            return _interval_result(hat_q(collection, event))
        if mode == "delta":
            return _rational_result(coherence_delta(collection, event))
        raise ScenarioError("--mode", f"expected tilde, hat or delta, got {mode!r}")
    if command == "demorgan":
        report = de_morgan_report(
            scenario.event(_require(options, "event_a")),
            scenario.event(_require(options, "event_b")),
            scenario.partition(_require(options, "partition")),
        )
        payload = {
            "psi_of_union": list(report.psi_of_union_direct.labels),
            "psi_of_union_formula": list(report.psi_of_union_formula.labels),
            "meet_of_images": list(report.meet_of_images_direct.labels),
            "meet_of_images_formula": list(report.meet_of_images_formula.labels),
            "psi_of_intersection": list(report.psi_of_intersection_direct.labels),
            "psi_of_intersection_formula": list(
                report.psi_of_intersection_formula.labels
            ),
            "join_of_images": list(report.join_of_images_direct.labels),
            "join_of_images_formula": list(report.join_of_images_formula.labels),
            "identities_hold": report.identities_hold,
            "meet_contained_in_psi_of_union": report.meet_contained_in_psi_of_union,
            "meet_containment_strict": report.meet_containment_strict,
            "psi_of_intersection_contained_in_join": (
                report.psi_of_intersection_contained_in_join
            ),
            "intersection_containment_strict": report.intersection_containment_strict,
        }
        lines = [f"{key}: {value}" for key, value in payload.items()]
        return _report_result(payload, lines)
    raise ScenarioError("command", f"unknown command {command!r}")


def _interval_row(interval: Interval) -> dict:
    obj = interval.to_json_obj()
    obj["percent"] = f"[{percent_str(interval.lo)}, {percent_str(interval.hi)}]"
    return obj


def ipcc_scenario() -> ScenarioFile:
    """Seven-block likelihood scale with a null outcome inside each block."""
    carriers = [f"z{j}" for j in range(7)]
    nulls = [f"w{j}" for j in range(7)]
    outcomes = []
    for z, w in zip(carriers, nulls):
        outcomes.extend([z, w])
    space = SampleSpace(tuple(outcomes))
    partition = Partition.of(space, [[z, w] for z, w in zip(carriers, nulls)])
    percents = [2, 8, 23, 33, 24, 8, 2]
    weights = {}
    for j, pct in enumerate(percents):
        weights[carriers[j]] = Fraction(pct, 100)
        weights[nulls[j]] = Fraction(0)
    measure = ProbMeasure.from_weights(space, weights)
    events = {}
    for n in range(7):
        labels = []
        for i in range(n):
            labels.extend([carriers[i], nulls[i]])
        labels.extend(nulls[j] for j in range(n + 1, 7))
        events[f"H{n}"] = space.event(*labels)
    return ScenarioFile(
        space=space,
        partitions={"Z": partition},
        measures={"P": measure},
        events=events,
        random_variables={},
        family_specs={},
    )


def demo_ipcc() -> QueryResult:
    """Likelihood-scale demo: the seven intervals and the conditional table."""
    scenario = ipcc_scenario()
    measure = scenario.measure("P")
    partition = scenario.partition("Z")
    family = PartitionIndicator(partition)

    intervals = []
    lines = ["IPCC likelihood scale demo", "interval measures:"]
    for n in range(7):
        event = scenario.event(f"H{n}")
        row = _interval_row(interval_measure(measure, family, event))
        row["event"] = f"H{n}"
        intervals.append(row)
        lines.append(f"  H{n}: [{row['lo']}, {row['hi']}]  {row['percent']}")

    conditionals = []
    lines.append("conditional table (m < n):")
    for n in range(1, 7):
        for m in range(n):
            row = _interval_row(
                conditional_psi(
                    measure, partition, scenario.event(f"H{m}"), scenario.event(f"H{n}")
                )
            )
            row["event"] = f"H{m}"
            row["given"] = f"H{n}"
            conditionals.append(row)
            lines.append(
                f"  H{m} | H{n}: [{row['lo']}, {row['hi']}]  {row['percent']}"
            )
    payload = {"demo": "ipcc", "intervals": intervals, "conditionals": conditionals}
    return _report_result(payload, lines)


def umbrella_scenario(weights: str | None = None) -> ScenarioFile:
    """Four barometer/cloud readings with the two natural partitions."""
    space = SampleSpace(("w01", "w10", "w00", "w11"))
    partition = Partition.of(space, [["w01", "w10"], ["w00", "w11"]])
    alt = Partition.of(space, [["w01"], ["w10"], ["w00", "w11"]])
    if weights is None:
        weights = "1/5,3/10,1/4,1/4"
    parts = [tok.strip() for tok in weights.split(",")]
    if len(parts) != 4:
        raise ScenarioError("--weights", "need four rationals for w01,w10,w00,w11")
    try:
        fractions = [Fraction(tok) for tok in parts]
    except (ValueError, ZeroDivisionError):
        raise ScenarioError("--weights", f"bad rational in {weights!r}") from None
    measure = ProbMeasure.from_weights(space, fractions)
    events = {
        "H01": space.event("w01"),
        "H10": space.event("w10"),
        "H00": space.event("w00"),
        "H11": space.event("w11"),
        "Agree": space.event("w00", "w11"),
        "Empty": space.empty,
    }
    return ScenarioFile(
        space=space,
        partitions={"Z": partition, "Zalt": alt},
        measures={"P": measure},
        events=events,
        random_variables={},
        family_specs={},
    )


def demo_umbrella(weights: str | None = None) -> QueryResult:
    """Umbrella decision demo: intervals, conditionals, pooled coherence."""
    scenario = umbrella_scenario(weights)
    measure = scenario.measure("P")
    partition = scenario.partition("Z")
    alt = scenario.partition("Zalt")
    family = PartitionIndicator(partition)

    lines = ["umbrella decision demo", "interval measures (partition Z):"]
    intervals = []
    for name in ("H01", "H10", "H00", "H11", "Agree"):
        row = _interval_row(interval_measure(measure, family, scenario.event(name)))
        row["event"] = name
        intervals.append(row)
        lines.append(f"  {name}: [{row['lo']}, {row['hi']}]")

    given = scenario.event("H10")
    conditionals = []
    lines.append("conditionals given H10:")
    for name in ("H11", "H00", "Agree", "Empty"):
        row = _interval_row(
            conditional_psi(measure, partition, scenario.event(name), given)
        )
        row["event"] = name
        row["given"] = "H10"
        conditionals.append(row)
        lines.append(f"  {name} | H10: [{row['lo']}, {row['hi']}]")

    agree = scenario.event("Agree")
    unconditional = interval_measure(measure, family, agree)
    conditioned = conditional_psi(measure, partition, agree, given)
    containment = {
        "unconditional": unconditional.to_json_obj(),
        "conditional": conditioned.to_json_obj(),
        "conditional_contains_unconditional": conditioned.contains(unconditional),
        "unconditional_contains_conditional": unconditional.contains(conditioned),
    }
    union_lo = min(
        conditional_psi(measure, partition, scenario.event(n), given).lo
        for n in ("H00", "H11")
    )
    union_hi = max(
        conditional_psi(measure, partition, scenario.event(n), given).hi
        for n in ("H00", "H11")
    )
    containment["union_of_singleton_conditionals_equals_conditional"] = (
        Interval(union_lo, union_hi) == conditioned
    )
    lines.append(
        "conditioning on H10 moves Agree from "
        f"{unconditional!r} to {conditioned!r}"
    )

    collection = MeasureCollection(
        ((measure, family), (measure, PartitionIndicator(alt)))
    )
    pooled_uncertainty = global_uncertainty(collection, given)
    pooled = {
        "tilde": tilde_q(collection, given).to_json_obj(),
        "hat": hat_q(collection, given).to_json_obj(),
        "delta": str(coherence_delta(collection, given)),
        "global_uncertainty_support": list(
            pooled_uncertainty.preimage([1]).labels
        ),
    }
    lines.append("two-partition collection at H10:")
    lines.append(f"  tilde: {pooled['tilde']['lo']}..{pooled['tilde']['hi']}")
    lines.append(f"  hat:   {pooled['hat']['lo']}..{pooled['hat']['hi']}")
    lines.append(f"  coherence delta: {pooled['delta']}")

    payload = {
        "demo": "umbrella",
        "weights": {
            label: str(measure.weight(label)) for label in scenario.space.outcomes
        },
        "intervals": intervals,
        "conditionals": conditionals,
        "agree_containment": containment,
        "collection": pooled,
    }
    return _report_result(payload, lines)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iprob",
        description="Exact interval probabilities from weak complementation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, *flags: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name)
        p.add_argument("--scenario", help="path to a scenario JSON file")
        p.add_argument("--json", action="store_true", help="emit the result as JSON")
        for flag in flags:
            p.add_argument(flag)
        return p

    add("measure", "--measure", "--family", "--partition", "--event")
    add("condition", "--measure", "--family", "--partition", "--event-a", "--given")
    add("independent", "--measure", "--family", "--partition", "--event-a", "--given")
    add("psi", "--partition", "--event")
    add("uncertainty", "--partition", "--event")
    add("lattice-check", "--partition")
    add("characterize", "--measure", "--family", "--partition")
    add("prop14", "--measure", "--family", "--partition")
    add("cdf", "--measure", "--family", "--partition", "--rv", "--t")
    add("law", "--measure", "--partition", "--rv", "--values")
    add("dominates", "--measure", "--family", "--partition", "--rv-a", "--rv-b")
    add("aggregate", "--members", "--event", "--mode")
    add("demorgan", "--partition", "--event-a", "--event-b")
    demo = sub.add_parser("demo")
    demo.add_argument("which", choices=["ipcc", "umbrella"])
    demo.add_argument("--weights", help="umbrella weights w01,w10,w00,w11")
    demo.add_argument("--json", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    options = {
        key: value
        for key, value in vars(args).items()
        if key not in {"command", "scenario", "json"} and value is not None
    }
    try:
        if args.command == "demo":
            result = run_query(None, "demo", options)
        else:
            scenario_path = getattr(args, "scenario", None)
            if not scenario_path:
                raise ScenarioError("--scenario", "required option missing")
            text = Path(scenario_path).read_text(encoding="utf-8")
            result = run_query(parse_scenario(text), args.command, options)
    except IprobError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(result.to_json_obj(), indent=2))
    else:
        print(result.text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
