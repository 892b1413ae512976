"""Composing filters, and when application order matters."""
from consideration import (
    TopK, Universe, build_filter, check_commutative2, check_commutative_n,
    compose2, compose_n, fixed_set_filter, verify_theorem2, verify_theorem3,
)

X = Universe.of_size(4)
budget = fixed_set_filter(X, [1, 2, 3])
brand = fixed_set_filter(X, [2, 3, 4])
both = compose2(budget, brand)                  # budget first, then brand
print(both(X.full), check_commutative2(budget, brand).commutative)

# two "best one" screens with opposite orders do not commute
X2 = Universe.of_size(2)
up = build_filter(X2, TopK((1, 2), 1))
down = build_filter(X2, TopK((2, 1), 1))
rep = check_commutative2(up, down)
print(rep.commutative, rep.witness)

# five fixed sets commute over all 120 orderings
X6 = Universe.of_size(6)
sets = [[1, 2, 3, 4], [2, 3, 4, 5], [1, 3, 4, 6], [3, 4, 5, 6], [2, 3, 4]]
fs = [fixed_set_filter(X6, y) for y in sets]
print(check_commutative_n(fs).commutative, compose_n(fs)(X6.full))

print(verify_theorem2(Universe.of_size(3), "if").summary())

# the converse is probed, not asserted
probe = verify_theorem2(X2, "only_if")
print(probe.summary())
print(probe.notes[0])
print(verify_theorem3(Universe.of_size(3), 3).summary())
