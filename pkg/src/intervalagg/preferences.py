"""Single-peaked preferences over intervals and a manipulation search.

A preference here is a cost function over candidate intervals with a
unique minimum at its ``peak`` and the monotonicity property that moving
a candidate toward the peak (in the endpointwise betweenness order) never
increases cost.  Two kinds are provided:

* :class:`WeightedL1Preference`: cost is a positively weighted L1
  distance between endpoint pairs.
* :class:`PenaltyPreference`: cost is the unweighted endpoint distance to
  the peak, plus a fixed penalty (the distance from peak to a designated
  ``reference`` interval) whenever the candidate is *not* between the
  peak and the reference.  This kind turns a single betweenness failure
  into a strict incentive to misreport, which is what makes the
  out-between-ness check equivalent to strategyproofness.

:func:`find_manipulation` searches misreports for one agent against a
rule.  The candidate grid is complete for order-statistic rules (their
outputs only ever copy endpoint values, so profile endpoints plus
midpoints plus outward offsets cover every achievable outcome), and the
seeded random cloud keeps the search honest against rules with richer
output behaviour.  Any reported improvement is checked by direct cost
comparison, so a ``found`` result is always a genuine witness.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Union

from .core import Interval, Profile, between, endpoint_distance
from .rules import RuleHandle

__all__ = [
    "WeightedL1Preference",
    "PenaltyPreference",
    "Preference",
    "pref_cost",
    "prefers",
    "GridConfig",
    "ManipulationResult",
    "candidate_misreports",
    "find_manipulation",
    "STRICT_IMPROVEMENT_EPS",
]

# A misreport only counts as profitable when the cost drop clears this.
STRICT_IMPROVEMENT_EPS = 1e-12


@dataclass(frozen=True)
class WeightedL1Preference:
    """Cost ``lower_weight * |lo - peak.lo| + upper_weight * |hi - peak.hi|``."""

    peak: Interval
    lower_weight: float = 1.0
    upper_weight: float = 1.0

    def __post_init__(self) -> None:
        if not isinstance(self.peak, Interval):
            raise TypeError(f"peak must be an Interval, got {self.peak!r}")
        for name, weight in (
            ("lower_weight", self.lower_weight),
            ("upper_weight", self.upper_weight),
        ):
            if not weight > 0 or weight != weight or weight == float("inf"):
                raise ValueError(
                    f"{name} must be a positive finite number, got {weight!r}"
                )

    def cost(self, candidate: Interval) -> float:
        return self.lower_weight * abs(candidate.lo - self.peak.lo) + (
            self.upper_weight * abs(candidate.hi - self.peak.hi)
        )


@dataclass(frozen=True)
class PenaltyPreference:
    """Endpoint distance to the peak plus a betweenness penalty.

    ``cost(T) = d(peak, T)`` when ``T`` lies between ``peak`` and
    ``reference`` (endpointwise, weakly), else
    ``d(peak, T) + d(peak, reference)``, where ``d`` is
    :func:`~intervalagg.core.endpoint_distance`.  The peak is the unique
    minimum (cost 0 there, positive elsewhere), and the added penalty is
    constant, so peak-ward moves never raise cost.
    """

    peak: Interval
    reference: Interval

    def __post_init__(self) -> None:
        for name, value in (("peak", self.peak), ("reference", self.reference)):
            if not isinstance(value, Interval):
                raise TypeError(f"{name} must be an Interval, got {value!r}")

    def cost(self, candidate: Interval) -> float:
        base = endpoint_distance(self.peak, candidate)
        if between(self.peak, candidate, self.reference):
            return base
        return base + endpoint_distance(self.peak, self.reference)


Preference = Union[WeightedL1Preference, PenaltyPreference]


def pref_cost(preference: Preference, candidate: Interval) -> float:
    """Cost of ``candidate`` under ``preference``; lower is better."""
    return preference.cost(candidate)


def prefers(preference: Preference, first: Interval, second: Interval) -> bool:
    """Weak preference: ``first`` is at least as good as ``second``."""
    return preference.cost(first) <= preference.cost(second)


@dataclass(frozen=True)
class GridConfig:
    """Knobs for the misreport candidate grid.

    ``margin_deltas`` are outward offsets added below the smallest and
    above the largest profile endpoint; ``random_candidates`` seeded
    extra intervals widen the net beyond the deterministic grid;
    ``extra_candidates`` lets callers force specific intervals in.
    """

    margin_deltas: tuple[float, ...] = (1.0, 10.0, 100.0)
    random_candidates: int = 200
    seed: int = 0
    extra_candidates: tuple[Interval, ...] = ()


@dataclass(frozen=True)
class ManipulationResult:
    """Outcome of a misreport search for one agent.

    When ``found``, ``misreport`` is the lexicographically smallest
    candidate achieving the largest cost drop, ``manipulated_outcome`` is
    the rule's output under it, and ``cost_drop`` is the strict
    improvement over the truthful outcome's cost.
    """

    found: bool
    truthful_outcome: Interval
    misreport: Optional[Interval] = None
    manipulated_outcome: Optional[Interval] = None
    cost_drop: float = 0.0


def candidate_misreports(profile: Profile, config: GridConfig) -> list[Interval]:
    """Deterministic misreport grid for a profile.

    Grid values: every profile endpoint, midpoints of adjacent distinct
    values, and outward margins at each configured delta.  Candidates are
    all increasing pairs of grid values, plus a seeded uniform cloud over
    a box twice the profile span, plus any ``extra_candidates``.  The
    returned list is sorted and duplicate-free, which fixes the search
    order and hence the tie-break.
    """
    values = sorted({v for entry in profile for v in (entry.lo, entry.hi)})
    lowest, highest = values[0], values[-1]
    grid = set(values)
    for a, b in zip(values, values[1:]):
        grid.add((a + b) / 2.0)
    for delta in config.margin_deltas:
        grid.add(lowest - delta)
        grid.add(highest + delta)
    points = sorted(grid)
    candidates = {Interval(a, b) for a, b in combinations(points, 2)}
    span = max(highest - lowest, 1.0)
    box_lo = lowest - 2.0 * span
    box_hi = highest + 2.0 * span
    rng = random.Random(config.seed)
    made = 0
    while made < config.random_candidates:
        a = rng.uniform(box_lo, box_hi)
        b = rng.uniform(box_lo, box_hi)
        if a == b:
            continue
        candidates.add(Interval(min(a, b), max(a, b)))
        made += 1
    candidates.update(config.extra_candidates)
    return sorted(candidates)


def find_manipulation(
    rule: RuleHandle,
    profile: Profile,
    agent_index: int,
    preference: Preference,
    config: GridConfig = GridConfig(),
) -> ManipulationResult:
    """Search misreports for ``agent_index`` that strictly cut their cost.

    The preference's peak must equal the agent's truthful judgment
    (anything else is not a manipulation question but a different
    profile).  Among candidates whose cost drop exceeds
    ``STRICT_IMPROVEMENT_EPS`` the largest drop wins, ties going to the
    lexicographically smallest misreport.  Complete for order-statistic
    rules; sound (never a false positive) for any rule.
    """
    if not 0 <= agent_index < len(profile):
        raise IndexError(
            f"agent index {agent_index} out of range for {len(profile)} agents"
        )
    if preference.peak != profile[agent_index]:
        raise ValueError(
            f"preference peak {preference.peak!r} differs from agent "
            f"{agent_index}'s truthful judgment {profile[agent_index]!r}"
        )
    truthful_outcome = rule(profile)
    truthful_cost = preference.cost(truthful_outcome)
    best_drop = 0.0
    best_misreport: Optional[Interval] = None
    best_outcome: Optional[Interval] = None
    for candidate in candidate_misreports(profile, config):
        outcome = rule(profile.replace_agent(agent_index, candidate))
        drop = truthful_cost - preference.cost(outcome)
        # Strictly-greater keeps the first (smallest) candidate on ties.
        if drop > STRICT_IMPROVEMENT_EPS and drop > best_drop:
            best_drop = drop
            best_misreport = candidate
            best_outcome = outcome
    if best_misreport is None:
        return ManipulationResult(found=False, truthful_outcome=truthful_outcome)
    return ManipulationResult(
        found=True,
        truthful_outcome=truthful_outcome,
        misreport=best_misreport,
        manipulated_outcome=best_outcome,
        cost_drop=best_drop,
    )
