"""
Quota rules as medians with phantom voters
==========================================

Every quota rule can be rewritten as a plain coordinate-wise median
after padding the profile with n + 1 fixed phantom intervals.  The
phantoms use extended-real endpoints: a phantom at (+inf, +inf) pulls
both aggregate bounds upward, one at (-inf, -inf) pulls them downward,
and a whole-line phantom (-inf, +inf) is neutral.  This script builds
the padding for a few quota pairs and checks the equivalence on random
profiles.
"""

import random

from intervalagg import (
    EndpointRuleParams,
    Interval,
    Profile,
    PhantomVector,
    endpoint_rule,
    endpoint_rule_phantoms,
    generalized_median,
    validate_phantoms,
)

profile = Profile((Interval(2, 4), Interval(3, 6), Interval(1, 5)))
n = len(profile)

############################################################
# For quotas (p, q) over n agents the recipe is: p phantoms at
# (+inf, +inf), q phantoms at (-inf, -inf), and whole-line phantoms
# for the remaining n + 1 - p - q slots.

for lower_quota, upper_quota in ((1, 1), (2, 2), (1, 3)):
    vector = endpoint_rule_phantoms(lower_quota, upper_quota, n)
    print(f"phantoms for ({lower_quota},{upper_quota}):", list(vector))

############################################################
# The generalized median pools the 3 judgments with the 4 phantoms and
# takes the middle order statistic of the 7 lower endpoints and of the
# 7 upper endpoints.  The result matches the direct quota computation.

print()
for lower_quota, upper_quota in ((1, 1), (2, 2), (1, 3)):
    vector = endpoint_rule_phantoms(lower_quota, upper_quota, n)
    pooled = generalized_median(vector, profile)
    direct = endpoint_rule(
        EndpointRuleParams(lower_quota, upper_quota, n), profile
    )
    print(f"({lower_quota},{upper_quota}) pooled={pooled} direct={direct}")
    assert pooled == direct

############################################################
# The match is not approximate.  Both paths copy endpoint values out of
# the input, so equality holds bit for bit.  A quick fuzz run over
# random profiles with deliberately tied endpoints confirms it.

rng = random.Random(7)
for trial in range(2000):
    entries = []
    for _ in range(n):
        lo = float(rng.randint(-5, 5))
        entries.append(Interval(lo, lo + rng.randint(1, 6)))
    sample = Profile(entries)
    for lower_quota, upper_quota in ((1, 1), (2, 2), (3, 1)):
        vector = endpoint_rule_phantoms(lower_quota, upper_quota, n)
        assert generalized_median(vector, sample) == endpoint_rule(
            EndpointRuleParams(lower_quota, upper_quota, n), sample
        )
print()
print("2000 tie-heavy random profiles: pooled and direct outputs identical")

############################################################
# Custom phantom vectors are allowed, but they must pass a validity
# check: at most n of each endpoint column may sit at either infinity,
# and at most n phantoms may be degenerate at (+inf, +inf) or at
# (-inf, -inf).  Violating vectors can push an aggregate bound to
# infinity or collapse the aggregate to a point, so they are rejected.

from intervalagg import ExtendedInterval

bad = PhantomVector(
    tuple(
        ExtendedInterval(float("-inf"), float("-inf")) for _ in range(n + 1)
    )
)
try:
    validate_phantoms(bad, n)
except ValueError as error:
    print()
    print("rejected phantom vector:", error)
