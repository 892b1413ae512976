"""Filter-space enumeration and seeded random generators."""

from __future__ import annotations

import itertools
from typing import Iterator

import numpy as np

from .core import (
    FixedSet,
    Filter,
    ExplicitTable,
    Preference,
    SatisficingPrefix,
    Threshold,
    TopK,
    Universe,
    bits,
    build_filter,
    popcount,
    submasks,
)
from .errors import CapacityError

FILTER_SPACE_CAP = 3


def filter_space_size(universe: Universe) -> int:
    """Number of contractive filters: ``2 ** sum(|A|)`` over all menus."""
    return 2 ** sum(popcount(m) for m in range(universe.n_menus))


def enumerate_filters(universe: Universe, cap: int = FILTER_SPACE_CAP) -> Iterator[Filter]:
    """Every contractive filter on ``universe``, in a fixed order.

    The last menu varies fastest; each menu's image runs through its submasks
    in ascending order.
    """
    if len(universe) > cap:
        raise CapacityError(
            f"exhaustive filter enumeration is capped at |X| <= {cap}, got {len(universe)}"
        )
    choices = [list(submasks(m)) for m in range(universe.n_menus)]
    provenance = ExplicitTable()
    for table in itertools.product(*choices):
        yield Filter(universe, table, provenance)


def io_filters(universe: Universe) -> list[Filter]:
    """The ``2**|X|`` fixed-set filters, ordered by the encoding of ``Y``."""
    return [
        build_filter(universe, FixedSet(universe.members_of(y)))
        for y in range(universe.n_menus)
    ]


def make_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_filter_table(universe: Universe, rng) -> Filter:
    """Uniform draw from the filter space: an independent random submask per menu.

    A uniform mask over X, intersected with the menu, is a uniform submask.
    """
    rng = make_rng(rng)
    raw = rng.integers(0, universe.n_menus, size=universe.n_menus)
    table = tuple(int(r) & m for m, r in enumerate(raw))
    return Filter(universe, table, ExplicitTable())


def random_subset(universe: Universe, rng) -> tuple:
    rng = make_rng(rng)
    keep = rng.integers(0, 2, size=len(universe))
    return tuple(x for x, k in zip(universe.alternatives, keep) if k)


def random_order(universe: Universe, rng) -> tuple:
    rng = make_rng(rng)
    perm = rng.permutation(len(universe))
    return tuple(universe.alternatives[i] for i in perm)


def random_preference(universe: Universe, rng) -> Preference:
    return Preference(universe, random_order(universe, rng))


def random_threshold_rule(universe: Universe, rng) -> Threshold:
    rng = make_rng(rng)
    scores = {x: float(s) for x, s in zip(universe.alternatives, rng.integers(0, 10, size=len(universe)))}
    cutoff = float(rng.integers(0, 11))
    return Threshold(scores, cutoff)


def random_rule(universe: Universe, rng):
    """One of the rule families with random parameters."""
    rng = make_rng(rng)
    n = len(universe)
    kind = int(rng.integers(0, 4))
    if kind == 0:
        return FixedSet(random_subset(universe, rng))
    if kind == 1:
        return random_threshold_rule(universe, rng)
    if kind == 2:
        return TopK(random_order(universe, rng), int(rng.integers(0, n + 1)))
    acceptable = random_subset(universe, rng) if rng.integers(0, 2) else None
    return SatisficingPrefix(random_order(universe, rng), int(rng.integers(0, n + 1)), acceptable)


def random_rule_filter(universe: Universe, rng) -> Filter:
    return build_filter(universe, random_rule(universe, rng))


def random_io_filter(universe: Universe, rng) -> Filter:
    return build_filter(universe, FixedSet(random_subset(universe, rng)))
