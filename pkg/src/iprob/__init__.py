"""Exact interval probabilities from weak complementation on finite spaces."""

from .aggregation import (
    MeasureCollection,
    coherence_delta,
    global_uncertainty,
    hat_q,
    tilde_q,
)
from .algebra import (
    ComplementationTable,
    DeMorganReport,
    Event,
    LatticeAxiomReport,
    Partition,
    SampleSpace,
    Violation,
    WeakComplementationReport,
    de_morgan_report,
    lattice_axiom_report,
    lattice_leq,
    lattice_meet,
    lattice_union,
    psi,
    uncertainty_set,
    verify_weak_complementation,
)
from .cli import QueryResult, demo_ipcc, demo_umbrella, run_query
from .conditioning import (
    Capacity,
    block_conditional_closed_form,
    conditional,
    conditional_psi,
    dempster_shafer_conditional,
    is_independent,
)
from .errors import (
    BudgetExceededError,
    FamilyDomainError,
    HypothesisError,
    IprobError,
    NegligibleEventError,
    ScenarioError,
    SpaceMismatchError,
)
from .measures import (
    AlphaFamily,
    ExplicitFamily,
    Interval,
    IntervalMeasureTable,
    PartitionFormResult,
    PartitionIndicator,
    ProbMeasure,
    RandomVariable,
    ScaledComplement,
    UncertaintyFamily,
    build_table,
    family_value,
    family_violations,
    interval_measure,
    reconstruct_family,
    recover_partition_form,
    width_superadditivity,
)
from .randvar import dominates, interval_cdf, pushforward_law, threshold_set
from .scenario import FamilySpec, ScenarioFile, parse_scenario, render_scenario

__version__ = "0.1.0"

__all__ = [
    "AlphaFamily",
    "BudgetExceededError",
    "Capacity",
    "ComplementationTable",
    "DeMorganReport",
    "Event",
    "ExplicitFamily",
    "FamilyDomainError",
    "FamilySpec",
    "HypothesisError",
    "Interval",
    "IntervalMeasureTable",
    "IprobError",
    "LatticeAxiomReport",
    "MeasureCollection",
    "NegligibleEventError",
    "Partition",
    "PartitionFormResult",
    "PartitionIndicator",
    "ProbMeasure",
    "QueryResult",
    "RandomVariable",
    "SampleSpace",
    "ScaledComplement",
    "ScenarioError",
    "ScenarioFile",
    "SpaceMismatchError",
    "UncertaintyFamily",
    "Violation",
    "WeakComplementationReport",
    "block_conditional_closed_form",
    "build_table",
    "coherence_delta",
    "conditional",
    "conditional_psi",
    "de_morgan_report",
    "demo_ipcc",
    "demo_umbrella",
    "dempster_shafer_conditional",
    "dominates",
    "family_value",
    "family_violations",
    "global_uncertainty",
    "hat_q",
    "interval_cdf",
    "interval_measure",
    "is_independent",
    "lattice_axiom_report",
    "lattice_leq",
    "lattice_meet",
    "lattice_union",
    "parse_scenario",
    "psi",
    "pushforward_law",
    "reconstruct_family",
    "recover_partition_form",
    "render_scenario",
    "run_query",
    "threshold_set",
    "tilde_q",
    "uncertainty_set",
    "verify_weak_complementation",
    "width_superadditivity",
]
