"""Sequential consideration: composing filters and testing commutativity.

``compose2(f1, f2)`` applies ``f1`` first, then ``f2``; so Γ₁₂ reads left to
right as the order of application.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Sequence

from .axioms import check_io
from .core import ExplicitTable, Filter, Menu, Universe, same_universe
from .errors import CapacityError, ValidationError
from .reports import TheoremReport
from .sampling import enumerate_filters, io_filters, make_rng, random_io_filter

DEFAULT_PERMUTATION_CAP = 6


@dataclass(frozen=True)
class FilterSequence:
    """A nonempty list of filters over one universe, in application order."""

    filters: tuple

    def __post_init__(self):
        fs = tuple(self.filters)
        object.__setattr__(self, "filters", fs)
        if not fs:
            raise ValidationError("a filter sequence needs at least one filter")
        for f in fs[1:]:
            same_universe(fs[0].universe, f.universe)

    @property
    def universe(self) -> Universe:
        return self.filters[0].universe

    def __len__(self) -> int:
        return len(self.filters)

    def __iter__(self):
        return iter(self.filters)


def _as_sequence(seq) -> FilterSequence:
    return seq if isinstance(seq, FilterSequence) else FilterSequence(tuple(seq))


def compose2(first: Filter, second: Filter) -> Filter:
    """A ↦ second(first(A))."""
    same_universe(first.universe, second.universe)
    t1, t2 = first.table, second.table
    return Filter(first.universe, tuple(t2[t1[m]] for m in range(len(t1))), ExplicitTable())


def compose_n(sequence) -> Filter:
    """Left fold of :func:`compose2`: Γₙ(…Γ₂(Γ₁(A)))."""
    seq = _as_sequence(sequence)
    out = seq.filters[0]
    for f in seq.filters[1:]:
        out = compose2(out, f)
    return out


@dataclass
class CommutativityReport:
    commutative: bool
    witness: dict[str, Any] | None = None
    io_status: tuple = ()

    def __post_init__(self):
        if self.commutative != (self.witness is None):
            raise ValidationError("a report is commutative exactly when it carries no witness")

    def __bool__(self) -> bool:
        return self.commutative


def _first_difference(t1: Sequence[int], t2: Sequence[int]) -> int | None:
    for m, (a, b) in enumerate(zip(t1, t2)):
        if a != b:
            return m
    return None


def check_commutative2(f1: Filter, f2: Filter) -> CommutativityReport:
    """Γ₁₂(A) = Γ₂₁(A) for every menu; the witness is the first differing menu."""
    same_universe(f1.universe, f2.universe)
    io = (check_io(f1).holds, check_io(f2).holds)
    g12, g21 = compose2(f1, f2), compose2(f2, f1)
    m = _first_difference(g12.table, g21.table)
    if m is None:
        return CommutativityReport(True, None, io)
    u = f1.universe
    w = {
        "menu": Menu(u, m),
        "order_a": (0, 1),
        "order_b": (1, 0),
        "result_a": Menu(u, g12.table[m]),
        "result_b": Menu(u, g21.table[m]),
    }
    return CommutativityReport(False, w, io)


def check_commutative_n(sequence, permutation_cap: int = DEFAULT_PERMUTATION_CAP) -> CommutativityReport:
    """The n-fold composite is invariant under every reordering of the filters.

    Orderings are visited in lexicographic permutation order; prefix folds
    are cached so shared prefixes are composed once.
    """
    seq = _as_sequence(sequence)
    n = len(seq)
    if n > permutation_cap:
        raise CapacityError(
            f"{n} filters give {math.factorial(n)} orderings; permutation cap is {permutation_cap}"
        )
    fs = seq.filters
    io = tuple(check_io(f).holds for f in fs)
    cache: dict[tuple, Filter] = {}

    def fold(perm: tuple) -> Filter:
        if perm in cache:
            return cache[perm]
        out = fs[perm[0]] if len(perm) == 1 else compose2(fold(perm[:-1]), fs[perm[-1]])
        cache[perm] = out
        return out

    base_perm = tuple(range(n))
    base = fold(base_perm)
    for perm in itertools.permutations(range(n)):
        other = fold(perm)
        m = _first_difference(base.table, other.table)
        if m is not None:
            u = seq.universe
            w = {
                "menu": Menu(u, m),
                "order_a": base_perm,
                "order_b": perm,
                "result_a": Menu(u, base.table[m]),
                "result_b": Menu(u, other.table[m]),
            }
            return CommutativityReport(False, w, io)
    return CommutativityReport(True, None, io)


def replay_commutativity_witness(filters: Sequence[Filter], report: CommutativityReport) -> bool:
    """Re-apply both orderings at the witness menu, filter by filter."""
    w = report.witness
    if w is None:
        return False

    def run(order, menu):
        for i in order:
            menu = filters[i](menu)
        return menu

    return run(w["order_a"], w["menu"]) != run(w["order_b"], w["menu"])


# -- commutativity of IO filters ---------------------------------------------


def verify_theorem2(universe: Universe, direction: str = "if", samples: int = 1000, seed=0) -> TheoremReport:
    """Probe IO ⟺ pairwise commutativity.

    ``if``: every pair of IO filters commutes. For |X| <= 3 the IO filters are
    found by running the IO checker over the whole filter space; beyond that,
    ``samples`` pairs of random fixed-set filters are drawn.

    ``only_if``: every commuting pair should be IO. This is treated as a probe
    over all pairs (|X| <= 2); commuting pairs with a non-IO member are
    collected as counterexample candidates instead of being asserted away.
    """
    direction = direction.replace("-", "_")
    if direction == "if":
        report = TheoremReport(
            theorem="theorem-2-if", unit="pairs",
            claim="if both filters are IO then they commute",
            mode="exhaustive" if len(universe) <= 3 else "sampled",
        )
        if len(universe) <= 3:
            ios = [f for f in enumerate_filters(universe) if check_io(f).holds]
            pairs = itertools.product(ios, repeat=2)
            report.notes.append(f"{len(ios)} IO filters found by exhaustive scan")
        else:
            rng = make_rng(seed)
            pairs = ((random_io_filter(universe, rng), random_io_filter(universe, rng)) for _ in range(samples))
            report.notes.append(f"seed={seed}, samples={samples}")
        for f1, f2 in pairs:
            report.checked += 1
            rep = check_commutative2(f1, f2)
            if rep.commutative:
                report.agreements += 1
            else:
                report.counterexamples.append({"pair": (f1, f2), "witness": rep.witness})
        return report

    if direction == "only_if":
        if len(universe) > 2:
            raise CapacityError("the only-if probe enumerates all filter pairs and needs |X| <= 2")
        report = TheoremReport(
            theorem="theorem-2-only-if", unit="pairs",
            claim="if two filters commute on every menu then both are IO",
            mode="exhaustive",
        )
        filters = list(enumerate_filters(universe))
        io = [check_io(f).holds for f in filters]
        for i, j in itertools.product(range(len(filters)), repeat=2):
            report.checked += 1
            rep = check_commutative2(filters[i], filters[j])
            if rep.commutative and not (io[i] and io[j]):
                report.candidates.append(
                    {"pair": (filters[i], filters[j]), "indices": (i, j), "io_status": (io[i], io[j])}
                )
            else:
                report.agreements += 1
        report.notes.append(
            f"{len(report.candidates)} commuting pairs have a non-IO member: "
            "counterexample candidates to the printed only-if claim"
        )
        return report

    raise ValidationError(f"unknown direction {direction!r}")


def verify_theorem3(universe: Universe, n: int = 3, samples: int = 1000, seed=0,
                    permutation_cap: int = DEFAULT_PERMUTATION_CAP) -> TheoremReport:
    """n IO filters commute, and their composite is the fixed-set filter on ∩ᵢ Γᵢ(X).

    Exhaustive over all n-tuples of IO filters for |X| <= 3, sampled beyond.
    """
    if n > permutation_cap:
        raise CapacityError(f"n = {n} exceeds permutation cap {permutation_cap}")
    if n < 1:
        raise ValidationError("need at least one filter per tuple (n >= 1)")
    exhaustive = len(universe) <= 3
    report = TheoremReport(
        theorem="theorem-3", unit="tuples",
        claim=f"any {n} IO filters commute; the composite is A ↦ A ∩ (Γ1(X) ∩ ... ∩ Γn(X))",
        mode="exhaustive" if exhaustive else "sampled",
    )
    if exhaustive:
        ios = io_filters(universe)
        tuples = itertools.product(ios, repeat=n)
    else:
        rng = make_rng(seed)
        tuples = (tuple(random_io_filter(universe, rng) for _ in range(n)) for _ in range(samples))
        report.notes.append(f"seed={seed}, samples={samples}")
    for tup in tuples:
        report.checked += 1
        rep = check_commutative_n(tup, permutation_cap)
        y = universe.full_mask
        for f in tup:
            y &= f.table[-1]
        composite = compose_n(tup)
        collapsed = all(composite.table[m] == m & y for m in range(universe.n_menus))
        if rep.commutative and collapsed:
            report.agreements += 1
        else:
            report.counterexamples.append(
                {"filters": tup, "witness": rep.witness, "collapses": collapsed}
            )
    return report
