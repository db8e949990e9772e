"""Aggregation rules mapping a profile of interval judgments to one interval.

Two families live here.  Order-statistic rules pick the aggregate lower
endpoint as the ``lower_quota``-th smallest individual lower endpoint and
the aggregate upper endpoint as the ``upper_quota``-th largest individual
upper endpoint; the quota constraint ``lower_quota + upper_quota <= n + 1``
is exactly what keeps the output nonempty on every profile.  Generalized
median rules pool the ``n`` judgments with ``n + 1`` fixed phantom
intervals (extended bounds allowed) and take the coordinatewise median of
the ``2n + 1`` values.  Every order-statistic rule equals the generalized
median over a specific phantom vector, and the conversion is provided.

The averaging rule, included as a contrast case, takes the arithmetic mean
of lower and upper endpoints.  Its means are computed through exact
rational sums with a single correctly rounded division, so the output is
invariant under reordering the agents and reproduces unanimous input
endpoints bit-exactly, which the exact anonymity and unanimity checks
rely on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence

from .core import (
    NEG_INF,
    POS_INF,
    ExtendedInterval,
    Interval,
    Profile,
)

__all__ = [
    "RuleEvaluationError",
    "EndpointRuleParams",
    "endpoint_rule",
    "median_rule",
    "maximal_rule",
    "averaging_rule",
    "PhantomVector",
    "validate_phantoms",
    "endpoint_rule_phantoms",
    "generalized_median",
    "RuleHandle",
    "endpoint_rule_handle",
    "median_rule_handle",
    "maximal_rule_handle",
    "averaging_rule_handle",
    "phantom_rule_handle",
    "valid_quota_pairs",
]


class RuleEvaluationError(Exception):
    """A rule failed to produce an interval for a profile.

    Raised by external-process adapters on spawn failures, timeouts,
    nonzero exits and malformed output; audits count these separately
    from axiom failures.
    """


def _check_quotas(lower_quota: int, upper_quota: int, n_agents: int) -> None:
    for name, value in (
        ("lower_quota", lower_quota),
        ("upper_quota", upper_quota),
        ("n_agents", n_agents),
    ):
        if not isinstance(value, int) or isinstance(value, bool):
            raise ValueError(f"{name} must be an int, got {value!r}")
    if n_agents < 1:
        raise ValueError(f"n_agents must be >= 1, got {n_agents}")
    if lower_quota < 1 or upper_quota < 1:
        raise ValueError(
            f"quotas must be >= 1, got ({lower_quota}, {upper_quota})"
        )
    if lower_quota + upper_quota > n_agents + 1:
        raise ValueError(
            f"quotas ({lower_quota}, {upper_quota}) violate "
            f"lower_quota + upper_quota <= n_agents + 1 with "
            f"n_agents = {n_agents}; the rule could output an empty interval"
        )


@dataclass(frozen=True)
class EndpointRuleParams:
    """Validated parameter triple for an order-statistic rule.

    ``lower_quota`` is the rank (1-based, from below) of the individual
    lower endpoint that becomes the aggregate lower endpoint;
    ``upper_quota`` is the rank from above on the upper side.  Requires
    ``1 <= lower_quota``, ``1 <= upper_quota`` and
    ``lower_quota + upper_quota <= n_agents + 1``.
    """

    lower_quota: int
    upper_quota: int
    n_agents: int

    def __post_init__(self) -> None:
        _check_quotas(self.lower_quota, self.upper_quota, self.n_agents)

    @property
    def is_symmetric(self) -> bool:
        return self.lower_quota == self.upper_quota


def endpoint_rule(params: EndpointRuleParams, profile: Sequence[Interval]) -> Interval:
    """Order-statistic aggregate under ``params``.

    Lower endpoint: the ``lower_quota``-th smallest individual lower
    endpoint.  Upper endpoint: the ``upper_quota``-th largest individual
    upper endpoint.  The quota constraint guarantees a strictly positive
    width on every profile of the declared size.
    """
    if len(profile) != params.n_agents:
        raise ValueError(
            f"profile has {len(profile)} agents, params expect {params.n_agents}"
        )
    lows = sorted(entry.lo for entry in profile)
    highs = sorted(entry.hi for entry in profile)
    return Interval(
        lows[params.lower_quota - 1],
        highs[params.n_agents - params.upper_quota],
    )


def median_rule(profile: Sequence[Interval]) -> Interval:
    """Symmetric rule with both quotas at ``(n + 1) // 2``.

    For odd ``n`` both aggregate endpoints are the coordinatewise medians
    of the individual endpoints; for even ``n`` they are the lower of the
    two middle lower endpoints and the upper of the two middle uppers.
    """
    n = len(profile)
    mid = (n + 1) // 2
    lows = sorted(entry.lo for entry in profile)
    highs = sorted(entry.hi for entry in profile)
    return Interval(lows[mid - 1], highs[n - mid])


def maximal_rule(profile: Sequence[Interval]) -> Interval:
    """Quota pair (1, 1): the smallest interval containing every judgment."""
    return Interval(
        min(entry.lo for entry in profile),
        max(entry.hi for entry in profile),
    )


def _exact_mean(values: list[float]) -> float:
    # Exact rational sum, then one correctly rounded division.  Gives a
    # mean that is permutation invariant and exactly reproduces constant
    # inputs, which fsum(values)/n does not (e.g. three copies of 0.1).
    return float(sum(Fraction(value) for value in values) / len(values))


def averaging_rule(profile: Sequence[Interval]) -> Interval:
    """Endpointwise arithmetic mean; the non-strategyproof contrast case.

    Means are exactly rounded, so the rule is bit-exactly anonymous and
    unanimous even though it fails neutrality and out-between-ness.
    """
    if len(profile) == 0:
        raise ValueError("profile needs at least one agent")
    return Interval(
        _exact_mean([entry.lo for entry in profile]),
        _exact_mean([entry.hi for entry in profile]),
    )


@dataclass(frozen=True)
class PhantomVector:
    """Fixed tuple of ``n + 1`` phantom intervals for a generalized median.

    Construction only checks shape (a nonempty tuple of
    :class:`ExtendedInterval`); whether the vector is *valid* for a given
    number of agents, i.e. guarantees a bounded nonempty aggregate on
    every profile, is the job of :func:`validate_phantoms`.
    """

    phantoms: tuple[ExtendedInterval, ...]

    def __post_init__(self) -> None:
        entries = tuple(self.phantoms)
        if not entries:
            raise ValueError("phantom vector must be nonempty")
        for pos, entry in enumerate(entries):
            if not isinstance(entry, ExtendedInterval):
                raise TypeError(
                    f"phantom {pos} is not an ExtendedInterval: {entry!r}"
                )
        object.__setattr__(self, "phantoms", entries)

    def __len__(self) -> int:
        return len(self.phantoms)

    def __iter__(self) -> Iterator[ExtendedInterval]:
        return iter(self.phantoms)


def validate_phantoms(vector: PhantomVector, n_agents: int) -> Optional[str]:
    """Check a phantom vector against a profile size.

    Returns ``None`` when valid, else a human-readable reason.  The
    conditions: exactly ``n_agents + 1`` phantoms, and each of the
    following counts at most ``n_agents``:

    * phantoms with lower bound ``-inf``,
    * phantoms with upper bound ``+inf``,
    * copies of ``(+inf, +inf)``,
    * copies of ``(-inf, -inf)``.

    These four bounds are exactly what rules out an unbounded or empty
    aggregate: if the pooled median came out invalid, more than
    ``n_agents`` of the ``2n + 1`` pooled intervals would have to push
    the same endpoint past the other side, and the ``n_agents`` real
    judgments are finite.
    """
    if n_agents < 1:
        raise ValueError(f"n_agents must be >= 1, got {n_agents}")
    size = len(vector)
    if size != n_agents + 1:
        return (
            f"phantom vector has {size} entries, "
            f"needs n_agents + 1 = {n_agents + 1}"
        )
    lo_neg_inf = sum(1 for ph in vector if ph.lo == NEG_INF)
    hi_pos_inf = sum(1 for ph in vector if ph.hi == POS_INF)
    all_pos_inf = sum(1 for ph in vector if ph.lo == POS_INF)
    all_neg_inf = sum(1 for ph in vector if ph.hi == NEG_INF)
    if lo_neg_inf > n_agents:
        return (
            f"{lo_neg_inf} phantoms have lower bound -inf, "
            f"at most {n_agents} allowed: the aggregate lower bound "
            "could be -inf"
        )
    if hi_pos_inf > n_agents:
        return (
            f"{hi_pos_inf} phantoms have upper bound +inf, "
            f"at most {n_agents} allowed: the aggregate upper bound "
            "could be +inf"
        )
    if all_pos_inf > n_agents:
        return (
            f"{all_pos_inf} phantoms equal (+inf, +inf), "
            f"at most {n_agents} allowed: the aggregate could be empty "
            "from above"
        )
    if all_neg_inf > n_agents:
        return (
            f"{all_neg_inf} phantoms equal (-inf, -inf), "
            f"at most {n_agents} allowed: the aggregate could be empty "
            "from below"
        )
    return None


def endpoint_rule_phantoms(
    lower_quota: int, upper_quota: int, n_agents: int
) -> PhantomVector:
    """Phantom vector whose generalized median equals the order-statistic rule.

    ``lower_quota`` copies of ``(+inf, +inf)``, then ``upper_quota``
    copies of ``(-inf, -inf)``, then ``n_agents + 1 - lower_quota -
    upper_quota`` copies of ``(-inf, +inf)``.  The high phantoms push the
    pooled lower median up to the ``lower_quota``-th smallest real lower
    endpoint; the low phantoms mirror this on the upper side; the
    whole-line phantoms are neutral.
    """
    _check_quotas(lower_quota, upper_quota, n_agents)
    top = ExtendedInterval(POS_INF, POS_INF)
    bottom = ExtendedInterval(NEG_INF, NEG_INF)
    whole = ExtendedInterval(NEG_INF, POS_INF)
    entries = (
        (top,) * lower_quota
        + (bottom,) * upper_quota
        + (whole,) * (n_agents + 1 - lower_quota - upper_quota)
    )
    return PhantomVector(entries)


def generalized_median(vector: PhantomVector, profile: Sequence[Interval]) -> Interval:
    """Coordinatewise median of the ``n`` judgments pooled with the phantoms.

    With ``2n + 1`` pooled intervals the aggregate lower endpoint is the
    ``(n + 1)``-th smallest pooled lower bound and the aggregate upper
    endpoint the ``(n + 1)``-th largest pooled upper bound.  Rejects
    phantom vectors that fail :func:`validate_phantoms` for this profile
    size, so the result is always a bounded nonempty interval.
    """
    n = len(profile)
    reason = validate_phantoms(vector, n)
    if reason is not None:
        raise ValueError(f"invalid phantom vector: {reason}")
    lows = sorted(
        [entry.lo for entry in profile] + [ph.lo for ph in vector.phantoms]
    )
    highs = sorted(
        [entry.hi for entry in profile] + [ph.hi for ph in vector.phantoms]
    )
    # 2n + 1 values: index n is simultaneously the (n+1)-th smallest and
    # the (n+1)-th largest position.
    return Interval(lows[n], highs[n])


@dataclass(frozen=True)
class RuleHandle:
    """Named callable wrapper giving every rule a uniform face.

    ``evaluate`` maps a :class:`Profile` to an :class:`Interval`; the
    handle itself is callable.  Audit reports and CLI output use ``name``.
    """

    name: str
    evaluate: Callable[[Profile], Interval]

    def __call__(self, profile: Profile) -> Interval:
        return self.evaluate(profile)


def endpoint_rule_handle(lower_quota: int, upper_quota: int) -> RuleHandle:
    """Handle for the order-statistic rule with the given quotas.

    Profile size is checked per call against the quota constraint, so one
    handle serves any ``n`` with ``lower_quota + upper_quota <= n + 1``.
    """
    _check_quotas(lower_quota, upper_quota, lower_quota + upper_quota)

    def evaluate(profile: Sequence[Interval]) -> Interval:
        n = len(profile)
        if lower_quota + upper_quota > n + 1:
            raise ValueError(
                f"quotas ({lower_quota}, {upper_quota}) invalid for "
                f"{n} agents"
            )
        lows = sorted(entry.lo for entry in profile)
        highs = sorted(entry.hi for entry in profile)
        return Interval(lows[lower_quota - 1], highs[n - upper_quota])

    return RuleHandle(f"endpoint:{lower_quota},{upper_quota}", evaluate)


def median_rule_handle() -> RuleHandle:
    return RuleHandle("median", median_rule)


def maximal_rule_handle() -> RuleHandle:
    return RuleHandle("maximal", maximal_rule)


def averaging_rule_handle() -> RuleHandle:
    return RuleHandle("averaging", averaging_rule)


def phantom_rule_handle(vector: PhantomVector, name: Optional[str] = None) -> RuleHandle:
    """Handle for the generalized median over a fixed phantom vector."""
    if name is None:
        name = f"phantoms[{len(vector)}]"

    def evaluate(profile: Sequence[Interval]) -> Interval:
        return generalized_median(vector, profile)

    return RuleHandle(name, evaluate)


def valid_quota_pairs(n_agents: int) -> list[tuple[int, int]]:
    """All quota pairs admissible for ``n_agents``, lexicographically."""
    if n_agents < 1:
        raise ValueError(f"n_agents must be >= 1, got {n_agents}")
    return [
        (lower, upper)
        for lower in range(1, n_agents + 1)
        for upper in range(1, n_agents + 2 - lower)
    ]
