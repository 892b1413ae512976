"""The filter properties, their witnesses, and the IO equivalence."""
from consideration import (
    OrderedFilter, SatisficingPrefix, TopK, Universe, build_filter,
    check_constant_number, check_dio, check_io, check_sens_alpha,
    check_condition_tau, check_sens_beta, describe_witness,
    fixed_set_filter, replay_witness, verify_theorem1,
)

X = Universe.of_size(2)

# satisficing: scan the listing, stop at the first item
first = build_filter(X, SatisficingPrefix((1, 2), 1))
print("alpha", check_sens_alpha(first).holds)   # True
tau = check_condition_tau(first)
print("tau", tau.holds, "|", describe_witness(tau))
io = check_io(first)
print("IO", io.holds, "|", describe_witness(io))
print("witness replays:", replay_witness(first, io))

# the two readings of Sen's beta disagree on a fixed set
only2 = fixed_set_filter(X, [2])
print("beta literal", check_sens_beta(only2, "literal").holds)      # False
print("beta classical", check_sens_beta(only2, "classical").holds)  # True

# order matters for "keep the first two you see"
X3 = Universe.of_size(3)
keep2 = OrderedFilter.keep_first(X3, 2)
dio = check_dio(keep2, X3.full)
print("DIO", dio.holds, "|", describe_witness(dio))

# constant number: top two always considers exactly two
print("CN(2)", check_constant_number(build_filter(X3, TopK((3, 1, 2), 2)), 2).holds)

# IO iff alpha and tau, over every filter on three alternatives
print(verify_theorem1(X3).summary())
