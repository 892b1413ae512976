"""Threshold representations of IO filters and WARP-style audits of choice data."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Mapping

from .axioms import check_io
from .core import (
    ChoiceDataset,
    Filter,
    Menu,
    Preference,
    Threshold,
    Universe,
    bits,
    build_filter,
    same_universe,
)
from .errors import CapacityError, RepresentationError, ValidationError
from .reports import TheoremReport
from .sampling import io_filters, make_rng, random_threshold_rule

ORACLE_CAP = 8


@dataclass(frozen=True, eq=False)
class ThresholdRepresentation:
    """Scores ``u1`` and a cutoff: x is considered iff ``u1[x] >= k_star``."""

    u1: Mapping[Any, float]
    k_star: float

    def __post_init__(self):
        if not math.isfinite(self.k_star):
            raise ValidationError("k_star must be finite")
        object.__setattr__(self, "u1", dict(self.u1))

    def __eq__(self, other):
        if not isinstance(other, ThresholdRepresentation):
            return NotImplemented
        return self.u1 == other.u1 and self.k_star == other.k_star


@dataclass(frozen=True, eq=False)
class AggregateUtility:
    """The evaluated multi-argument utility of each alternative."""

    value: Mapping[Any, float]

    def __post_init__(self):
        object.__setattr__(self, "value", dict(self.value))

    def best(self, universe: Universe, mask: int):
        """Highest-valued member of the menu, lowest index on ties; None if empty."""
        best = None
        for i in bits(mask):
            x = universe.alternatives[i]
            if best is None or self.value[x] > self.value[best]:
                best = x
        return best


def construct_threshold_representation(filter: Filter) -> ThresholdRepresentation:
    """u1 = indicator of Y (alternatives considered somewhere), k* = 1.

    Raises :class:`RepresentationError` for a non-IO filter; the error's
    ``report`` carries the IO witness.
    """
    io = check_io(filter)
    if not io.holds:
        raise RepresentationError(f"filter is not IO: {io.witness!r}", io)
    u = filter.universe
    y = 0
    for img in filter.table:
        y |= img
    return ThresholdRepresentation({x: 1.0 if y >> i & 1 else 0.0 for i, x in enumerate(u)}, 1.0)


def induced_filter(rep: ThresholdRepresentation, universe: Universe) -> Filter:
    """A ↦ {x ∈ A : u1(x) >= k*}."""
    return build_filter(universe, Threshold(rep.u1, rep.k_star))


def threshold_choice(rep: ThresholdRepresentation, agg: AggregateUtility, menu: Menu):
    """Screen the menu by threshold, then take the aggregate-utility maximum."""
    u = menu.universe
    considered = 0
    for i in bits(menu.mask):
        if rep.u1[u.alternatives[i]] >= rep.k_star:
            considered |= 1 << i
    return agg.best(u, considered)


def threshold_dataset(rep: ThresholdRepresentation, agg: AggregateUtility, universe: Universe,
                      menus=None, provenance=None) -> ChoiceDataset:
    """Choice records from :func:`threshold_choice` on ``menus`` (default: all nonempty)."""
    masks = range(1, universe.n_menus) if menus is None else [m.mask for m in menus]
    records = {m: threshold_choice(rep, agg, Menu(universe, m)) for m in masks}
    return ChoiceDataset(universe, records, provenance)


def rational_dataset(preference: Preference, menus=None, provenance=None) -> ChoiceDataset:
    """Choice records from maximising ``preference`` on ``menus`` (default: all nonempty)."""
    u = preference.universe
    masks = range(1, u.n_menus) if menus is None else [m.mask for m in menus]
    records = {}
    for m in masks:
        for x in preference.order:
            if m >> u.index(x) & 1:
                records[m] = x
                break
    return ChoiceDataset(u, records, provenance)


# -- audits -----------------------------------------------------------------


class Axiom(str, enum.Enum):
    WARP = "warp"
    WARP_CO = "warp-co"
    WARP_IO = "warp-io"


@dataclass
class WarpReport:
    axiom: Axiom
    satisfied: bool
    violations: list[dict] = field(default_factory=list)
    rationalizing_preference: Preference | None = None
    coverage_gaps: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.satisfied != (not self.violations):
            raise ValidationError("satisfied exactly when there are no violations")

    def __bool__(self) -> bool:
        return self.satisfied


def _chosen(dataset: ChoiceDataset) -> list[tuple[int, Any]]:
    return [(m, c) for m, c in dataset.records.items() if c is not None]


def rationalizability_oracle(dataset: ChoiceDataset, cap: int = ORACLE_CAP) -> Preference | None:
    """First strict order (lexicographic permutation order) that reproduces every choice."""
    u = dataset.universe
    if len(u) > cap:
        raise CapacityError(f"oracle enumerates {len(u)}! orders; cap is |X| <= {cap}")
    records = [(m, u.index(c)) for m, c in _chosen(dataset)]
    for perm in itertools.permutations(range(len(u))):
        rank = [0] * len(u)
        for r, i in enumerate(perm):
            rank[i] = r
        ok = True
        for m, ci in records:
            rc = rank[ci]
            for i in bits(m):
                if rank[i] < rc:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return Preference(u, tuple(u.alternatives[i] for i in perm))
    return None


def check_warp(dataset: ChoiceDataset) -> WarpReport:
    """No two records reverse each other: c(S) = x, y ∈ S and c(T) = y, x ∈ T, x ≠ y.

    On full-domain data the rationalizability oracle is also run and must agree.
    """
    u = dataset.universe
    recs = _chosen(dataset)
    violations = []
    for (s, x), (t, y) in itertools.combinations(recs, 2):
        if x != y and s >> u.index(y) & 1 and t >> u.index(x) & 1:
            violations.append({"S": Menu(u, s), "c(S)": x, "T": Menu(u, t), "c(T)": y})
    report = WarpReport(Axiom.WARP, not violations, violations)
    full = dataset.is_full_domain and len(recs) == u.n_menus - 1
    if full and len(u) <= ORACLE_CAP:
        pref = rationalizability_oracle(dataset)
        report.rationalizing_preference = pref
        if (pref is not None) != report.satisfied:
            report.notes.append("oracle disagrees with the pairwise check")
        else:
            report.notes.append("rationalizability oracle agrees")
    elif not full:
        report.notes.append("partial data: passing the pairwise check does not imply rationalizability")
    return report


def check_warp_co(dataset: ChoiceDataset) -> WarpReport:
    """For every nonempty S some b* ∈ S survives: whenever a recorded T ∋ b* has
    c(T) ∈ S and b* = c(T′) for a recorded T′ ⊋ T, then c(T) = b*.
    """
    u = dataset.universe
    recs = _chosen(dataset)
    # blockers[b]: recorded T ∋ b with a recorded proper superset choosing b, and c(T) ≠ b
    blockers: dict[int, list[tuple[int, int, Any]]] = {i: [] for i in range(len(u))}
    for t, ct in recs:
        for t2, c2 in recs:
            if t2 != t and t & ~t2 == 0:
                bi = u.index(c2)
                if t >> bi & 1 and ct != c2:
                    blockers[bi].append((t, t2, ct))
    violations = []
    for s in range(1, u.n_menus):
        blocked = {}
        for bi in bits(s):
            hits = [(t, t2, ct) for t, t2, ct in blockers[bi] if s >> u.index(ct) & 1]
            if not hits:
                break
            blocked[bi] = hits[0]
        else:
            violations.append(
                {
                    "S": Menu(u, s),
                    "clause": "no b* in S survives",
                    "blocking": [
                        {
                            "b*": u.alternatives[bi],
                            "T": Menu(u, t),
                            "c(T)": ct,
                            "T'": Menu(u, t2),
                            "c(T')": u.alternatives[bi],
                        }
                        for bi, (t, t2, ct) in blocked.items()
                    ],
                }
            )
    return WarpReport(Axiom.WARP_CO, not violations, violations)


def check_warp_io(dataset: ChoiceDataset) -> WarpReport:
    """The IO-adapted weak axiom, both parts.

    Part 1: for every nonempty S there is b* ∈ S, equal to c(S) when S is
    recorded with a choice, such that for every recorded T ∋ b* with
    c(T) ∈ S: c(T) = b* iff c({b*, x}) = b* for every x ∈ T that is chosen
    from some recorded menu. Menus {b*, x} without a record are coverage
    gaps; the affected T is skipped.

    Part 2: if the singleton {b} is recorded with no choice, b is never chosen.
    """
    u = dataset.universe
    recs = dataset.records
    chosen = _chosen(dataset)
    ever = 0
    for _, c in chosen:
        ever |= 1 << u.index(c)
    gaps: dict[tuple, dict] = {}
    violations = []

    def pair_choice(bi: int, xi: int):
        q = 1 << bi | 1 << xi
        if q not in recs:
            gaps.setdefault(("pair", q), {"part": 1, "missing": Menu(u, q)})
            return ...
        return recs[q]

    def viable(bi: int, s: int):
        b = u.alternatives[bi]
        for t, ct in chosen:
            if not t >> bi & 1 or not s >> u.index(ct) & 1:
                continue
            lhs = ct == b
            rhs = True
            for xi in bits(t & ever):
                q = pair_choice(bi, xi)
                if q is ...:
                    rhs = None
                    break
                if q != b:
                    rhs = False
                    break
            if rhs is None:
                continue
            if lhs != rhs:
                return {"b*": b, "T": Menu(u, t), "c(T)": ct, "c(T) = b*": lhs, "pairwise wins": rhs}
        return None

    for s in range(1, u.n_menus):
        cs = recs.get(s)
        candidates = [u.index(cs)] if cs is not None else list(bits(s))
        failures = []
        for bi in candidates:
            why = viable(bi, s)
            if why is None:
                break
            failures.append(why)
        else:
            violations.append(
                {
                    "part": 1,
                    "S": Menu(u, s),
                    "clause": "no b* in S satisfies the pairwise biconditional",
                    "failures": failures,
                }
            )

    for i, b in enumerate(u):
        single = 1 << i
        if not ever >> i & 1:
            continue
        if single not in recs:
            gaps.setdefault(("single", single), {"part": 2, "missing": Menu(u, single)})
            continue
        if recs[single] is None:
            where = [Menu(u, m) for m, c in chosen if c == b]
            violations.append(
                {
                    "part": 2,
                    "b": b,
                    "clause": "c({b}) is none but b is chosen elsewhere",
                    "chosen_from": where,
                }
            )

    report = WarpReport(Axiom.WARP_IO, not violations, violations, coverage_gaps=list(gaps.values()))
    report.notes.append("x ranges over alternatives chosen from some recorded menu")
    return report


def replay_warp_violation(dataset: ChoiceDataset, axiom: Axiom, violation: dict) -> bool:
    """Re-check one reported violation against the dataset from its clauses."""
    axiom = Axiom(axiom)
    u = dataset.universe
    recs = dataset.records
    if axiom is Axiom.WARP:
        s, t, x, y = violation["S"], violation["T"], violation["c(S)"], violation["c(T)"]
        return (
            recs.get(s.mask) == x and recs.get(t.mask) == y and x != y and y in s and x in t
        )
    if axiom is Axiom.WARP_CO:
        s = violation["S"]
        # every b* must be blocked by a genuine (T, T') pair
        blocked = {entry["b*"]: entry for entry in violation["blocking"]}
        if set(blocked) != set(s.members):
            return False
        for b, e in blocked.items():
            t, t2, ct = e["T"], e["T'"], e["c(T)"]
            if not (
                b in t
                and recs.get(t.mask) == ct
                and ct is not None
                and ct in s
                and t < t2
                and recs.get(t2.mask) == b
                and ct != b
            ):
                return False
        return True
    if axiom is Axiom.WARP_IO:
        if violation["part"] == 2:
            b = violation["b"]
            single = u.menu([b])
            return recs.get(single.mask, ...) is None and any(c == b for c in recs.values())
        s = violation["S"]
        cs = recs.get(s.mask)
        candidates = [cs] if cs is not None else list(s.members)
        failed = {f["b*"]: f for f in violation["failures"]}
        if set(failed) != set(candidates):
            return False
        ever = {c for c in recs.values() if c is not None}
        for b, f in failed.items():
            t, ct = f["T"], f["c(T)"]
            if recs.get(t.mask) != ct or ct is None or b not in t or ct not in s:
                return False
            wins = []
            for x in t:
                if x not in ever:
                    continue
                q = u.menu([b, x]).mask
                if q not in recs:
                    return False
                wins.append(recs[q] == b)
            if (ct == b) == all(wins):
                return False
        return True
    return False


def verify_theorem6(universe: Universe, samples: int = 0, seed=0) -> TheoremReport:
    """IO ⟺ threshold representable, checked in both directions.

    Roundtrip: each of the 2**|X| fixed-set filters is represented and the
    induced filter must reproduce its table exactly. Converse: ``samples``
    random representations must induce filters that pass the IO check.
    """
    report = TheoremReport(
        theorem="theorem-6", unit="filters",
        claim="a filter is IO iff it has a threshold representation",
        mode="exhaustive" if not samples else "exhaustive+sampled",
    )
    for f in io_filters(universe):
        report.checked += 1
        rep = construct_threshold_representation(f)
        back = induced_filter(rep, universe)
        if back.table == f.table:
            report.agreements += 1
        else:
            report.counterexamples.append({"direction": "roundtrip", "filter": f, "representation": rep})
    if samples:
        rng = make_rng(seed)
        report.notes.append(f"seed={seed}, samples={samples}")
        for _ in range(samples):
            rule = random_threshold_rule(universe, rng)
            rep = ThresholdRepresentation(rule.scores, rule.cutoff)
            report.checked += 1
            io = check_io(induced_filter(rep, universe))
            if io.holds:
                report.agreements += 1
            else:
                report.counterexamples.append({"direction": "converse", "representation": rep, "witness": io.witness})
    return report


def random_aggregate(universe: Universe, rng) -> AggregateUtility:
    rng = make_rng(rng)
    vals = rng.permutation(len(universe))
    return AggregateUtility({x: float(v) for x, v in zip(universe, vals)})


def random_representation(universe: Universe, rng) -> ThresholdRepresentation:
    rule = random_threshold_rule(universe, rng)
    return ThresholdRepresentation(rule.scores, rule.cutoff)
