"""
Misreport searches and rule identification
==========================================

Two diagnostics for a rule you did not write yourself.  The misreport
search asks whether some agent could gain by lying about their
interval, given a single-peaked preference centered on their true one.
The identification probe asks whether an opaque rule behaves exactly
like a quota rule, and if so recovers the quotas.
"""

from intervalagg import (
    GridConfig,
    Interval,
    Profile,
    WeightedL1Preference,
    averaging_rule_handle,
    endpoint_rule_handle,
    find_manipulation,
    identify_endpoint_rule,
    median_rule_handle,
    staircase_profile,
)

profile = Profile((Interval(2, 4), Interval(3, 6), Interval(1, 5)))
agent = 0
preference = WeightedL1Preference(profile[agent])

############################################################
# Against the averaging rule the search succeeds immediately.  The
# first agent can drag the mean toward their own interval by
# exaggerating downward, and the search reports the best misreport on
# its deterministic candidate grid together with the cost improvement
# it buys.

result = find_manipulation(
    averaging_rule_handle(), profile, agent, preference,
    GridConfig(random_candidates=0),
)
print("averaging rule, first agent of", profile)
print("  truthful outcome:   ", result.truthful_outcome)
print("  found manipulation: ", result.found)
print("  best misreport:     ", result.misreport)
print("  outcome after lying:", result.manipulated_outcome)
print(f"  cost drop:           {result.cost_drop:.6f}")

############################################################
# The same search against the median rule over the same grid, plus a
# seeded cloud of random candidates, finds nothing.  Order-statistic
# rules leave no room for a profitable lie under any single-peaked
# preference, which is their main selling point.

result = find_manipulation(
    median_rule_handle(), profile, agent, preference,
    GridConfig(random_candidates=500, seed=3),
)
print()
print("median rule, same agent and preference")
print("  found manipulation:", result.found)

############################################################
# Identification starts from the staircase profile, whose intervals are
# pairwise disjoint.  On it, a quota rule cannot help revealing p and q
# through which endpoints it copies.  A read-off that is not integral
# rules the family out at once; a plausible read-off is then confirmed
# on random profiles.

print()
print("staircase for n = 4:", staircase_profile(4))
for rule in (
    median_rule_handle(),
    endpoint_rule_handle(1, 1),
    endpoint_rule_handle(2, 3),
):
    quotas = identify_endpoint_rule(rule, 4)
    print(f"  {rule.name:<14} -> quotas {quotas}")

############################################################
# The averaging rule is rejected.  For n = 3 its staircase output
# coincides with the symmetric quota pair, so the read-off looks
# plausible, and the confirmation phase then catches the mismatch on
# the first random profile where means and order statistics differ.
# For even n the mean does not even land on staircase endpoints and the
# read-off fails by itself.

for n_agents in (3, 4):
    quotas = identify_endpoint_rule(averaging_rule_handle(), n_agents)
    print(f"  averaging (n = {n_agents}) -> quotas {quotas}")
