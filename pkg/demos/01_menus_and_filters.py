"""Menus, filters and choice on a nine-alternative universe."""
from consideration import (
    ChoiceDataset, FixedSet, Preference, TopK, Universe,
    build_filter, check_choice_membership, choose, enumerate_menus,
)

X = Universe.of_size(9)
menus = enumerate_menus(X)
print(len(menus), "menus")                      # 2**9
print(menus[:4], "...", menus[-1])              # canonical integer order

# a fixed set filter: only 2 and 3 ever get looked at
gamma = build_filter(X, FixedSet((2, 3)))
print(gamma(X.menu([1, 2, 3, 4, 5])))           # {2, 3}
print(gamma(X.menu([1, 4, 7])))                 # {}

# "only look at the front row": keep the first two under a shelf order
shelf = build_filter(X, TopK((9, 8, 7, 6, 5, 4, 3, 2, 1), 2))
print(shelf(X.menu([1, 2, 3, 8])))              # {3, 8}

# choice is the best considered alternative
taste = Preference(X, (2, 3, 1, 4, 5, 6, 7, 8, 9))
A = X.menu([1, 2, 3])
print(choose(taste, gamma(A)))                  # 2
print(choose(taste, gamma(X.menu([7]))))        # None: nothing considered

# observed choices must come from the consideration set
data = ChoiceDataset.from_pairs(X, [((1, 2, 3), 2), ((1, 4), 1)])
print(check_choice_membership(data, gamma))     # [{1, 4}]
