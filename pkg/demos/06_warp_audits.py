"""Auditing observed choices against WARP and its two variants."""
from consideration import (
    ChoiceDataset, Universe, check_warp, check_warp_co, check_warp_io,
    loads, rationalizability_oracle,
)
from consideration.cli import generate
from consideration.serialization import dumps

X = Universe.of_size(3)

# 1 beats 2 in a pair but 2 wins once 3 shows up
flip = ChoiceDataset.from_pairs(X, [((1, 2), 1), ((1, 2, 3), 2)])
print(check_warp(flip).violations)

# a cycle over pairs is not rationalizable, though no two records reverse
cycle = ChoiceDataset.from_pairs(X, [((1, 2), 1), ((2, 3), 2), ((1, 3), 3)])
print(rationalizability_oracle(cycle), check_warp(cycle).satisfied, check_warp(cycle).notes)

# choice overload needs four alternatives to show up
X4 = Universe.of_size(4)
overload = ChoiceDataset.from_pairs(X4, [((1, 2), 2), ((1, 2, 3), 1), ((1, 2, 4), 1), ((1, 2, 3, 4), 2)])
print(check_warp_co(overload).violations[0]["S"])

# data from a threshold chooser passes WARP-IO
data = loads(dumps(generate("io-choice-dataset", 5, seed=7)))
print(data.provenance)
rep = check_warp_io(data)
print(rep.satisfied, len(rep.violations), rep.coverage_gaps)

# declining {2} but choosing 2 elsewhere breaks the second part
bad = ChoiceDataset.from_pairs(Universe.of_size(2), [((2,), None), ((1, 2), 2)])
print(check_warp_io(bad).violations)
