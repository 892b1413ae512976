"""Choosing a filter by weighing the best considered alternative against attention cost.

A filter's utility on menu A is ``benefit(best of Γ(A)) - cost(|Γ(A)|)``,
where "best" follows the model's preference. Filters that leave the
consideration set empty are ineligible whenever some filter in the space
considers at least one alternative (the choice mandate).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

from .core import Filter, Menu, Preference, choose, identity_filter, popcount, same_universe
from .errors import ValidationError
from .reports import TheoremReport
from .sampling import io_filters


@dataclass(frozen=True, eq=False)
class FilterUtilityModel:
    """Benefit per alternative, cost per consideration-set size, and a preference.

    ``cost[k]`` is the cost of considering ``k`` alternatives, for k = 0..|X|.
    ``none_benefit`` is the benefit of an empty consideration set; it may not
    exceed the smallest alternative benefit.
    """

    benefit: Mapping[Any, float]
    cost: Sequence[float]
    preference: Preference
    none_benefit: float = 0.0

    def __post_init__(self):
        u = self.preference.universe
        object.__setattr__(self, "benefit", {x: float(self.benefit[x]) for x in u if x in self.benefit})
        object.__setattr__(self, "cost", tuple(float(c) for c in self.cost))
        missing = [x for x in u if x not in self.benefit]
        if missing:
            raise ValidationError(f"benefit undefined for {missing!r}")
        if len(self.cost) < len(u) + 1:
            raise ValidationError(f"cost must be defined on 0..{len(u)}, got {len(self.cost)} values")
        if self.benefit and self.none_benefit > min(self.benefit.values()):
            raise ValidationError("none_benefit must not exceed the smallest alternative benefit")

    @property
    def universe(self):
        return self.preference.universe


@dataclass(frozen=True)
class FilterSpace:
    """The filters available to choose from, with display labels."""

    filters: tuple
    labels: tuple = ()

    def __post_init__(self):
        fs = tuple(self.filters)
        object.__setattr__(self, "filters", fs)
        if not fs:
            raise ValidationError("a filter space needs at least one filter")
        for f in fs[1:]:
            same_universe(fs[0].universe, f.universe)
        labels = tuple(self.labels) or tuple(f"filter-{i}" for i in range(len(fs)))
        if len(labels) != len(fs):
            raise ValidationError("one label per filter")
        object.__setattr__(self, "labels", labels)

    @property
    def universe(self):
        return self.filters[0].universe

    def __len__(self) -> int:
        return len(self.filters)


def evaluate_filter_utility(model: FilterUtilityModel, filter: Filter, menu: Menu) -> float:
    same_universe(model.universe, filter.universe)
    considered = filter(menu)
    pick = choose(model.preference, considered)
    b = model.none_benefit if pick is None else model.benefit[pick]
    return b - model.cost[len(considered)]


@dataclass
class ConvexityReport:
    convex: bool
    witness: int | None = None
    reason: str = ""


def check_convex_cost(model: FilterUtilityModel) -> ConvexityReport:
    """Discrete strict convexity on 0..|X|: positive, strictly increasing first differences.

    The witness ``k`` is where the failing difference starts.
    """
    c = model.cost[: len(model.universe) + 1]
    d1 = [c[k + 1] - c[k] for k in range(len(c) - 1)]
    for k, d in enumerate(d1):
        if d <= 0:
            return ConvexityReport(False, k, f"cost({k + 1}) - cost({k}) = {d} is not positive")
    for k in range(len(d1) - 1):
        if d1[k + 1] <= d1[k]:
            return ConvexityReport(
                False, k, f"second difference at {k} is {d1[k + 1] - d1[k]}, not positive"
            )
    return ConvexityReport(True)


@dataclass
class FilterChoice:
    index: int
    filter: Filter
    label: str
    utilities: list[float]
    eligible: list[bool]
    mandate_binding: bool

    @property
    def utility(self) -> float:
        return self.utilities[self.index]


def choose_filter(model: FilterUtilityModel, space: FilterSpace, menu: Menu) -> FilterChoice:
    """Utility-maximising eligible filter; ties go to the lowest index."""
    if not isinstance(space, FilterSpace):
        space = FilterSpace(tuple(space))
    same_universe(model.universe, space.universe)
    utils = [evaluate_filter_utility(model, f, menu) for f in space.filters]
    nonempty = [f.table[menu.mask] != 0 for f in space.filters]
    binding = any(nonempty) and not all(nonempty)
    eligible = nonempty if any(nonempty) else [True] * len(space)
    best = None
    for i, (u, ok) in enumerate(zip(utils, eligible)):
        if ok and (best is None or u > utils[best]):
            best = i
    return FilterChoice(best, space.filters[best], space.labels[best], utils, eligible, binding)


def _filter_index(space: FilterSpace, f: Filter) -> int | None:
    for i, g in enumerate(space.filters):
        if g == f:
            return i
    return None


def verify_costless_full_consideration(space: FilterSpace, model: FilterUtilityModel,
                                       menus: Iterable[Menu]) -> TheoremReport:
    """With zero cost and benefit non-decreasing in preference, full consideration is optimal.

    Per menu: a filter with Γ(A) = A is among the maximisers, and the chosen
    filter picks the menu's best alternative.
    """
    report = TheoremReport(
        theorem="theorem-4", unit="menus",
        claim="costless consideration: considering the whole menu is optimal",
        mode="menus",
    )
    u = model.universe
    if any(c != 0 for c in model.cost[: len(u) + 1]):
        report.precondition_failures.append("cost is not identically zero")
    ranked = model.preference.order
    for better, worse in zip(ranked, ranked[1:]):
        if model.benefit[better] < model.benefit[worse]:
            report.precondition_failures.append(
                f"benefit decreases from {better!r} to the less preferred {worse!r}"
            )
            break
    if _filter_index(space, identity_filter(u)) is None:
        report.precondition_failures.append("identity filter is not in the space")
    if report.precondition_failures:
        return report

    for menu in menus:
        report.checked += 1
        if not menu:
            report.agreements += 1
            report.notes.append(f"menu {menu!r} is degenerate: every filter ties")
            continue
        res = choose_filter(model, space, menu)
        top = max(u for u, ok in zip(res.utilities, res.eligible) if ok)
        maximisers = [i for i, (v, ok) in enumerate(zip(res.utilities, res.eligible)) if ok and v == top]
        full_among = any(space.filters[i].table[menu.mask] == menu.mask for i in maximisers)
        picked = choose(model.preference, res.filter(menu))
        best = choose(model.preference, menu)
        if full_among and picked == best:
            report.agreements += 1
        else:
            report.counterexamples.append(
                {"menu": menu, "chosen": res.label, "chosen_alternative": picked, "best": best}
            )
    return report


def verify_worthless_consideration(space: FilterSpace, model: FilterUtilityModel,
                                   menus: Iterable[Menu]) -> TheoremReport:
    """With constant benefit and strictly increasing cost, the smallest eligible set wins."""
    report = TheoremReport(
        theorem="theorem-5", unit="menus",
        claim="worthless consideration: the chosen filter minimises consideration cost",
        mode="menus",
    )
    u = model.universe
    values = set(model.benefit.values()) | {model.none_benefit}
    if len(values) > 1:
        report.precondition_failures.append("benefit is not constant across alternatives and none")
    c = model.cost[: len(u) + 1]
    if any(c[k + 1] <= c[k] for k in range(len(c) - 1)):
        report.precondition_failures.append("cost is not strictly increasing")
    if report.precondition_failures:
        return report

    for menu in menus:
        report.checked += 1
        res = choose_filter(model, space, menu)
        sizes = [popcount(f.table[menu.mask]) for f in space.filters]
        least = min(s for s, ok in zip(sizes, res.eligible) if ok)
        if sizes[res.index] == least:
            report.agreements += 1
        else:
            report.counterexamples.append(
                {"menu": menu, "chosen": res.label, "size": sizes[res.index], "minimum": least}
            )
        if menu and least > 1:
            report.notes.append(f"menu {menu!r}: smallest eligible consideration set has {least} members")
        if menu and least == 0:
            report.notes.append(f"menu {menu!r}: every filter considers nothing; mandate is vacuous")
    return report


@dataclass
class FlexibilityReport:
    holds: bool
    pairs_checked: int
    reversals: list[dict] = field(default_factory=list)


def check_preference_for_flexibility(space: FilterSpace, model: FilterUtilityModel, menu: Menu) -> FlexibilityReport:
    """Does the choice rule always pick Γ₁ over Γ₂ when Γ₁(A) ⊇ Γ₂(A)?

    Each comparable ordered pair is run through :func:`choose_filter` as a
    two-filter space with Γ₁ listed first, so ties favour the superset.
    """
    if not isinstance(space, FilterSpace):
        space = FilterSpace(tuple(space))
    fs = space.filters
    checked = 0
    reversals = []
    for i, fi in enumerate(fs):
        for j, fj in enumerate(fs):
            if i == j:
                continue
            gi, gj = fi.table[menu.mask], fj.table[menu.mask]
            if gj & ~gi or gi == gj:
                continue
            checked += 1
            pair = choose_filter(model, FilterSpace((fi, fj), (space.labels[i], space.labels[j])), menu)
            if pair.index != 0:
                reversals.append(
                    {
                        "superset": space.labels[i],
                        "subset": space.labels[j],
                        "menu": menu,
                        "superset_utility": pair.utilities[0],
                        "subset_utility": pair.utilities[1],
                    }
                )
    return FlexibilityReport(not reversals, checked, reversals)


def fixed_set_space(universe, include_identity: bool = True) -> FilterSpace:
    """Identity (first) plus every fixed-set filter, labelled by its set."""
    filters, labels = [], []
    if include_identity:
        filters.append(identity_filter(universe))
        labels.append("identity")
    for f in io_filters(universe):
        filters.append(f)
        labels.append("Y=" + repr(f.considered))
    return FilterSpace(tuple(filters), tuple(labels))
