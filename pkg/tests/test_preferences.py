import random

import pytest
from hypothesis import given
import hypothesis.strategies as st

from intervalagg import (
    GridConfig,
    Interval,
    PenaltyPreference,
    Profile,
    STRICT_IMPROVEMENT_EPS,
    WeightedL1Preference,
    averaging_rule_handle,
    between,
    candidate_misreports,
    endpoint_distance,
    endpoint_rule_handle,
    find_manipulation,
    median_rule_handle,
    pref_cost,
    prefers,
)

from .conftest import BENCHMARK_PROFILE
from .strategies import intervals


def sample_interval(rng):
    a = rng.uniform(-10.0, 10.0)
    b = rng.uniform(-10.0, 10.0)
    while a == b:
        b = rng.uniform(-10.0, 10.0)
    return Interval(min(a, b), max(a, b))


def sample_between(rng, peak, far):
    """Random interval endpointwise between ``peak`` and ``far``."""
    while True:
        t_lo = rng.random()
        t_hi = rng.random()
        lo = peak.lo + t_lo * (far.lo - peak.lo)
        hi = peak.hi + t_hi * (far.hi - peak.hi)
        if lo < hi:
            return Interval(lo, hi)


class TestCosts:
    def test_weighted_cost_examples(self):
        pref = WeightedL1Preference(Interval(0, 1))
        assert pref_cost(pref, Interval(0, 1)) == 0.0
        assert pref_cost(pref, Interval(1, 3)) == 3.0

    def test_weighted_cost_equals_distance_at_unit_weights(self):
        pref = WeightedL1Preference(Interval(0, 1))
        candidate = Interval(-4, 2.5)
        assert pref_cost(pref, candidate) == endpoint_distance(
            Interval(0, 1), candidate
        )

    def test_weighted_cost_uses_weights(self):
        pref = WeightedL1Preference(Interval(0, 1), lower_weight=2.0, upper_weight=0.5)
        assert pref_cost(pref, Interval(1, 3)) == 2.0 * 1 + 0.5 * 2

    def test_penalty_cost_example(self):
        pref = PenaltyPreference(peak=Interval(0, 1), reference=Interval(2, 3))
        assert pref_cost(pref, Interval(5, 6)) == 14.0

    def test_penalty_cost_between_skips_penalty(self):
        pref = PenaltyPreference(peak=Interval(0, 1), reference=Interval(4, 5))
        candidate = Interval(2, 3)
        assert between(pref.peak, candidate, pref.reference)
        assert pref_cost(pref, candidate) == endpoint_distance(
            pref.peak, candidate
        )

    def test_zero_exactly_at_peak(self):
        weighted = WeightedL1Preference(Interval(0, 1))
        penalty = PenaltyPreference(peak=Interval(0, 1), reference=Interval(9, 10))
        assert pref_cost(weighted, Interval(0, 1)) == 0.0
        assert pref_cost(penalty, Interval(0, 1)) == 0.0
        for other in (Interval(0, 1.25), Interval(-1, 1), Interval(3, 4)):
            assert pref_cost(weighted, other) > 0.0
            assert pref_cost(penalty, other) > 0.0

    def test_weight_validation(self):
        for bad in (0.0, -1.0, float("inf"), float("nan")):
            with pytest.raises(ValueError):
                WeightedL1Preference(Interval(0, 1), lower_weight=bad)
            with pytest.raises(ValueError):
                WeightedL1Preference(Interval(0, 1), upper_weight=bad)

    def test_peak_type_validation(self):
        with pytest.raises(TypeError):
            WeightedL1Preference((0, 1))
        with pytest.raises(TypeError):
            PenaltyPreference(peak=Interval(0, 1), reference=(2, 3))


class TestPrefers:
    def test_peak_weakly_beats_everything(self):
        pref = WeightedL1Preference(Interval(0, 1))
        for other in (Interval(0, 1), Interval(5, 6), Interval(-3, -1)):
            assert prefers(pref, Interval(0, 1), other)

    def test_cost_comparison_example(self):
        pref = WeightedL1Preference(Interval(0, 1))
        assert prefers(pref, Interval(1, 2), Interval(3, 4))
        assert not prefers(pref, Interval(3, 4), Interval(1, 2))

    def test_single_peaked_membership_campaign(self):
        """Both preference kinds belong to the single-peaked class: an
        interval between the peak and a third interval is weakly
        preferred to that third interval, and the peak strictly beats
        every non-peak interval."""
        rng = random.Random(20260822)
        for trial in range(10_000):
            peak = sample_interval(rng)
            far = sample_interval(rng)
            middle = sample_between(rng, peak, far)
            weights = (10.0 ** rng.uniform(-1, 1), 10.0 ** rng.uniform(-1, 1))
            for pref in (
                WeightedL1Preference(peak, *weights),
                PenaltyPreference(peak=peak, reference=sample_interval(rng)),
            ):
                assert between(peak, middle, far)
                assert prefers(pref, middle, far)
                if far != peak:
                    assert pref_cost(pref, far) > 0.0

    @given(intervals(), intervals(), st.floats(0.0, 1.0))
    def test_between_implies_weak_preference(self, peak, far, t):
        lo = peak.lo + t * (far.lo - peak.lo)
        hi = peak.hi + t * (far.hi - peak.hi)
        if not lo < hi:
            return
        middle = Interval(lo, hi)
        if not between(peak, middle, far):
            return
        assert prefers(WeightedL1Preference(peak), middle, far)
        assert prefers(
            PenaltyPreference(peak=peak, reference=far), middle, far
        )


class TestCandidateGrid:
    def test_contains_endpoints_midpoints_margins(self):
        profile = Profile((Interval(0, 1), Interval(2, 3)))
        grid = candidate_misreports(profile, GridConfig(random_candidates=0))
        values = {v for iv in grid for v in (iv.lo, iv.hi)}
        for expected in (0.0, 1.0, 2.0, 3.0, 0.5, 1.5, 2.5,
                         -1.0, -10.0, -100.0, 4.0, 13.0, 103.0):
            assert expected in values
        assert all(iv.lo < iv.hi for iv in grid)

    def test_sorted_and_duplicate_free(self):
        profile = Profile((Interval(0, 1), Interval(2, 3)))
        grid = candidate_misreports(profile, GridConfig())
        assert grid == sorted(set(grid))

    def test_deterministic_given_seed(self):
        profile = Profile((Interval(0, 1), Interval(2, 3)))
        first = candidate_misreports(profile, GridConfig(seed=5))
        second = candidate_misreports(profile, GridConfig(seed=5))
        assert first == second
        different = candidate_misreports(profile, GridConfig(seed=6))
        assert first != different

    def test_extra_candidates_included(self):
        profile = Profile((Interval(0, 1), Interval(2, 3)))
        wanted = Interval(-2, -1)
        grid = candidate_misreports(
            profile, GridConfig(extra_candidates=(wanted,))
        )
        assert wanted in grid


class TestFindManipulation:
    def test_averaging_example_with_injected_candidate(self):
        """Pinning the full worked example requires injecting (-2,-1)
        into the grid; the deterministic part does not contain it."""
        profile = Profile((Interval(0, 1), Interval(2, 3)))
        pref = WeightedL1Preference(Interval(0, 1))
        result = find_manipulation(
            averaging_rule_handle(), profile, 0, pref,
            GridConfig(extra_candidates=(Interval(-2, -1),)),
        )
        assert result.found
        assert result.truthful_outcome == Interval(1, 2)
        assert result.misreport == Interval(-2, -1)
        assert result.manipulated_outcome == Interval(0, 1)
        assert result.cost_drop == 2.0

    def test_averaging_manipulable_with_default_grid(self):
        profile = Profile((Interval(0, 1), Interval(2, 3)))
        pref = WeightedL1Preference(Interval(0, 1))
        result = find_manipulation(averaging_rule_handle(), profile, 0, pref)
        assert result.found
        assert result.cost_drop > STRICT_IMPROVEMENT_EPS
        outcome_cost = pref_cost(pref, result.manipulated_outcome)
        truthful_cost = pref_cost(pref, result.truthful_outcome)
        assert outcome_cost < truthful_cost

    def test_median_on_benchmark_profile_is_safe(self):
        for agent in range(3):
            for pref in (
                WeightedL1Preference(BENCHMARK_PROFILE[agent]),
                PenaltyPreference(
                    peak=BENCHMARK_PROFILE[agent], reference=Interval(0, 9),
                ),
            ):
                result = find_manipulation(
                    median_rule_handle(), BENCHMARK_PROFILE, agent, pref
                )
                assert not result.found
                assert result.misreport is None
                assert result.cost_drop == 0.0

    def test_widest_rule_agent_strictly_inside(self):
        """Under the smallest-lower/largest-upper rule an agent whose
        judgment sits strictly inside the output can only push the
        outcome further from their peak."""
        profile = Profile((Interval(0, 10), Interval(3, 4)))
        result = find_manipulation(
            endpoint_rule_handle(1, 1), profile, 1,
            WeightedL1Preference(Interval(3, 4)),
        )
        assert not result.found

    def test_endpoint_rules_safe_on_sampled_instances(self):
        rng = random.Random(99)
        for trial in range(40):
            n = rng.randint(1, 3)
            profile = Profile(sample_interval(rng) for _ in range(n))
            p = rng.randint(1, n)
            q = rng.randint(1, n + 1 - p)
            agent = rng.randrange(n)
            result = find_manipulation(
                endpoint_rule_handle(p, q), profile, agent,
                WeightedL1Preference(profile[agent]),
                GridConfig(random_candidates=40),
            )
            assert not result.found

    def test_agent_index_validated(self):
        pref = WeightedL1Preference(Interval(0, 1))
        profile = Profile((Interval(0, 1), Interval(2, 3)))
        with pytest.raises(IndexError):
            find_manipulation(median_rule_handle(), profile, 2, pref)
        with pytest.raises(IndexError):
            find_manipulation(median_rule_handle(), profile, -1, pref)

    def test_peak_must_match_truthful_judgment(self):
        profile = Profile((Interval(0, 1), Interval(2, 3)))
        with pytest.raises(ValueError):
            find_manipulation(
                median_rule_handle(), profile, 1,
                WeightedL1Preference(Interval(0, 1)),
            )

    def test_search_is_deterministic(self):
        profile = Profile((Interval(0, 1), Interval(2, 3)))
        pref = WeightedL1Preference(Interval(0, 1))
        results = {
            (
                find_manipulation(averaging_rule_handle(), profile, 0, pref)
                .misreport
            )
            for _ in range(3)
        }
        assert len(results) == 1
