"""IO filters as score thresholds, and choice through a threshold."""
import numpy as np

from consideration import (
    AggregateUtility, RepresentationError, SatisficingPrefix, Universe,
    build_filter, construct_threshold_representation, fixed_set_filter,
    induced_filter, threshold_choice, verify_theorem6,
)

X = Universe.of_size(3)
gamma = fixed_set_filter(X, [2, 3])
rep = construct_threshold_representation(gamma)
print(rep.u1, rep.k_star)
print(induced_filter(rep, X) == gamma)          # exact roundtrip

# alternative 1 has the highest aggregate value but is screened out
agg = AggregateUtility({1: 9, 2: 5, 3: 4})
print(threshold_choice(rep, agg, X.full))       # 2

# non-IO filters have no threshold representation
try:
    construct_threshold_representation(build_filter(Universe.of_size(2), SatisficingPrefix((1, 2), 1)))
except RepresentationError as e:
    print("no representation:", e.report.witness)

# a table of thresholds: how many alternatives pass as the cutoff rises
scores = np.array([0.2, 0.9, 0.5])
for k in np.linspace(0, 1, 5):
    print(round(k, 2), (scores >= k).sum())

print(verify_theorem6(Universe.of_size(4), samples=500, seed=1).summary())
