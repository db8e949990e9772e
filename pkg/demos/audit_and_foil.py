"""
Auditing rules against axioms
=============================

An audit throws seeded random profiles at a rule and checks one axiom
per sample: permutation invariance, behavior under monotone maps,
translation equivariance, and so on.  Failures come with replayable
witnesses.  The median rule comes out clean.  The averaging rule, which
takes the arithmetic mean of the lower and of the upper endpoints, is
the instructive foil: it looks reasonable, satisfies several axioms
exactly, and still fails the two that matter for robustness and
honesty.
"""

from intervalagg import (
    AuditConfig,
    Interval,
    MonotoneMap,
    Profile,
    audit,
    averaging_rule_handle,
    check_weak_neutrality,
    median_rule_handle,
    replay_witness,
)

############################################################
# Audit the median rule over the default axiom battery.  Every sample
# passes.

report = audit(median_rule_handle(), AuditConfig(n_agents=3, samples=400, seed=11))
for line in report.summary_lines():
    print(line)

############################################################
# Now the averaging rule under the same configuration.  Four axioms
# hold exactly (means commute with permutations, translations, and
# widening).  Betweenness-flavored axioms break, and so does weak
# neutrality, because means do not commute with nonlinear monotone
# maps.

print()
report = audit(averaging_rule_handle(), AuditConfig(n_agents=3, samples=400, seed=11))
for line in report.summary_lines():
    print(line)

############################################################
# Each failing tally stores its first witness as plain JSON-ready data.
# Replaying a witness re-runs the exact check that failed, so a report
# can be audited itself.

first_failing = report.failing_axioms()[0]
witness = report.tallies[first_failing].first_witness
print()
print("replaying the first", first_failing, "witness")
outcome = replay_witness(averaging_rule_handle(), witness)
print("still fails:", not outcome.passed)

############################################################
# The weak-neutrality failure is easy to see by hand.  Stretch the line
# with a monotone map that has a single kink at 1: below the kink the
# map is the identity, above it the slope is 9.  The two agents'
# intervals straddle the kink, the mean does not survive the stretch.

kinked = MonotoneMap.through([(0.0, 0.0), (1.0, 1.0), (2.0, 10.0)])
profile = Profile((Interval(0, 0.5), Interval(1, 1.5)))
check = check_weak_neutrality(averaging_rule_handle(), profile, kinked)
print()
print("kinked-map counterexample for averaging")
print("  image of the truthful aggregate:", check.witness["expected"])
print("  aggregate of the mapped profile:", check.witness["mapped_output"])
print("  passed:", check.passed)
