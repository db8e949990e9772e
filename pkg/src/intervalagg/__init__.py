"""Aggregation of interval judgments into a single community standard.

The package implements order-statistic aggregation rules over interval
judgments, their phantom-interval generalized-median form, single-peaked
preferences with a misreport search, and a property-testing audit engine
that checks any rule against the axioms the rules are characterised by
(responsiveness, anonymity, neutrality, translation equivariance,
continuity surrogate, independent endpoints, out-between-ness and
friends), with deterministic seeded campaigns and replayable witnesses.
"""

from .core import (
    NEG_INF,
    POS_INF,
    ExtendedInterval,
    Interval,
    Profile,
    between,
    endpoint_distance,
    ext_precedes,
    make_interval,
    meets_lower_ray,
    meets_upper_ray,
    scalar_between,
    subset,
)
from .rules import (
    EndpointRuleParams,
    PhantomVector,
    RuleEvaluationError,
    RuleHandle,
    averaging_rule,
    averaging_rule_handle,
    endpoint_rule,
    endpoint_rule_handle,
    endpoint_rule_phantoms,
    generalized_median,
    maximal_rule,
    maximal_rule_handle,
    median_rule,
    median_rule_handle,
    phantom_rule_handle,
    valid_quota_pairs,
    validate_phantoms,
)
from .transforms import (
    MonotoneMap,
    apply_map,
    apply_map_interval,
    apply_map_profile,
    identity_map,
    invert_map,
    map_from_data,
    map_to_data,
    random_increasing_map,
    reflection_map,
    scaling_map,
    translation_map,
)
from .preferences import (
    STRICT_IMPROVEMENT_EPS,
    GridConfig,
    ManipulationResult,
    PenaltyPreference,
    Preference,
    WeightedL1Preference,
    candidate_misreports,
    find_manipulation,
    pref_cost,
    prefers,
)
from .audit import (
    ALL_AXIOM_IDS,
    DEFAULT_AUDIT_AXIOMS,
    AuditConfig,
    AuditReport,
    AxiomCheck,
    audit,
    check_anonymity,
    check_continuity_lipschitz,
    check_endpoint_property,
    check_independent_endpoints,
    check_lower_property,
    check_manipulation,
    check_out_betweenness,
    check_responsiveness,
    check_strong_neutrality,
    check_translation_equivariance,
    check_unanimity,
    check_upper_property,
    check_weak_neutrality,
    identify_endpoint_rule,
    replay_witness,
    sample_profile,
    staircase_profile,
)

__version__ = "0.1.0"

__all__ = [
    "NEG_INF",
    "POS_INF",
    "Interval",
    "ExtendedInterval",
    "Profile",
    "make_interval",
    "ext_precedes",
    "meets_lower_ray",
    "meets_upper_ray",
    "scalar_between",
    "between",
    "subset",
    "endpoint_distance",
    "EndpointRuleParams",
    "PhantomVector",
    "RuleEvaluationError",
    "RuleHandle",
    "endpoint_rule",
    "median_rule",
    "maximal_rule",
    "averaging_rule",
    "generalized_median",
    "endpoint_rule_phantoms",
    "validate_phantoms",
    "endpoint_rule_handle",
    "median_rule_handle",
    "maximal_rule_handle",
    "averaging_rule_handle",
    "phantom_rule_handle",
    "valid_quota_pairs",
    "MonotoneMap",
    "apply_map",
    "apply_map_interval",
    "apply_map_profile",
    "invert_map",
    "identity_map",
    "translation_map",
    "scaling_map",
    "reflection_map",
    "random_increasing_map",
    "map_to_data",
    "map_from_data",
    "WeightedL1Preference",
    "PenaltyPreference",
    "Preference",
    "STRICT_IMPROVEMENT_EPS",
    "pref_cost",
    "prefers",
    "GridConfig",
    "ManipulationResult",
    "candidate_misreports",
    "find_manipulation",
    "AxiomCheck",
    "AuditConfig",
    "AuditReport",
    "DEFAULT_AUDIT_AXIOMS",
    "ALL_AXIOM_IDS",
    "audit",
    "replay_witness",
    "sample_profile",
    "check_responsiveness",
    "check_anonymity",
    "check_weak_neutrality",
    "check_strong_neutrality",
    "check_translation_equivariance",
    "check_continuity_lipschitz",
    "check_independent_endpoints",
    "check_out_betweenness",
    "check_lower_property",
    "check_upper_property",
    "check_endpoint_property",
    "check_unanimity",
    "check_manipulation",
    "identify_endpoint_rule",
    "staircase_profile",
]
