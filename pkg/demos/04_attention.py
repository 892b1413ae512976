"""Choosing how much to consider when attention costs something."""
from consideration import (
    FilterUtilityModel, Preference, Universe, check_convex_cost,
    check_preference_for_flexibility, choose_filter, enumerate_menus,
    fixed_set_space, verify_costless_full_consideration,
    verify_worthless_consideration,
)

X = Universe.of_size(3)
taste = Preference(X, (2, 1, 3))
space = fixed_set_space(X)                      # identity plus all 8 fixed sets
print(space.labels)

# each extra alternative costs more than the last
model = FilterUtilityModel({1: 8, 2: 10, 3: 6}, [0, 1, 4, 9], taste)
print(check_convex_cost(model))
for A in enumerate_menus(X):
    pick = choose_filter(model, space, A)
    print(A, "->", pick.label, pick.utility)

# free attention: looking at everything is optimal
free = FilterUtilityModel({1: 2, 2: 3, 3: 1}, [0, 0, 0, 0], taste)
print(verify_costless_full_consideration(space, free, enumerate_menus(X)).summary())

# worthless attention: look at as little as the mandate allows
flat = FilterUtilityModel({x: 5 for x in X}, [0, 1, 4, 9], taste, 5)
print(verify_worthless_consideration(space, flat, enumerate_menus(X)).summary())

# a bigger consideration set can lose under convex cost
rep = check_preference_for_flexibility(space, flat, X.full)
print(rep.holds, rep.reversals[0])
