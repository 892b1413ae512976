"""Decision procedures for filter properties.

Every checker is exhaustive over the universe's menus and returns a
:class:`PropertyReport`. A failing report carries a witness: a dict of the
alternatives, menus or orderings that instantiate the violated implication.
:func:`replay_witness` re-checks a witness against the definition directly.

Sen's α and Condition τ are checked through their one-step forms (drop or
add a single alternative). Chaining one-step moves recovers any ``A ⊆ B``
pair that keeps ``x`` present, so the two forms are equivalent; the test
suite compares them against an all-pairs scan.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Any

from .core import (
    Filter,
    Menu,
    OrderedFilter,
    OrderedMenu,
    Universe,
    bits,
    popcount,
    same_universe,
    submasks,
)
from .errors import CapacityError, ValidationError
from .reports import TheoremReport
from .sampling import enumerate_filters, make_rng, random_filter_table, random_rule_filter

DEFAULT_FACTORIAL_CAP = 8


class Property(str, enum.Enum):
    SENS_ALPHA = "sens-alpha"
    SENS_BETA_LITERAL = "sens-beta-literal"
    SENS_BETA_CLASSICAL = "sens-beta-classical"
    CONDITION_TAU = "condition-tau"
    IO = "io"
    DIO = "dio"
    CONSTANT_NUMBER = "constant-number"


@dataclass
class PropertyReport:
    property: Property
    holds: bool
    witness: dict[str, Any] | None = None
    parameter: Any = None
    detail: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValidationError("a report holds exactly when it carries no witness")

    def __bool__(self) -> bool:
        return self.holds


def _menu(u: Universe, mask: int) -> Menu:
    return Menu(u, mask)


def check_sens_alpha(filter: Filter) -> PropertyReport:
    """x ∈ Γ(B) and x ∈ A ⊆ B imply x ∈ Γ(A)."""
    u, t = filter.universe, filter.table
    for b in range(u.n_menus):
        for xi in bits(t[b]):
            for yi in bits(b & ~(1 << xi)):
                a = b & ~(1 << yi)
                if not t[a] >> xi & 1:
                    w = {"x": u.alternatives[xi], "A": _menu(u, a), "B": _menu(u, b)}
                    return PropertyReport(Property.SENS_ALPHA, False, w)
    return PropertyReport(Property.SENS_ALPHA, True)


def check_condition_tau(filter: Filter) -> PropertyReport:
    """x ∈ Γ(A) and A ⊆ B imply x ∈ Γ(B)."""
    u, t = filter.universe, filter.table
    full = u.full_mask
    for a in range(u.n_menus):
        for xi in bits(t[a]):
            for yi in bits(full & ~a):
                b = a | 1 << yi
                if not t[b] >> xi & 1:
                    w = {"x": u.alternatives[xi], "A": _menu(u, a), "B": _menu(u, b)}
                    return PropertyReport(Property.CONDITION_TAU, False, w)
    return PropertyReport(Property.CONDITION_TAU, True)


def check_sens_beta(filter: Filter, variant: str = "classical") -> PropertyReport:
    """Sen's β, the take-with-me condition.

    ``literal``: x1, x2 ∈ A ⊆ B and x2 ∈ Γ(B) imply x1 ∈ Γ(B).
    ``classical``: additionally requires x1, x2 ∈ Γ(A).
    """
    if variant == "literal":
        return _sens_beta_literal(filter)
    if variant == "classical":
        return _sens_beta_classical(filter)
    raise ValidationError(f"unknown Sen's beta variant {variant!r}")


def _sens_beta_literal(filter: Filter) -> PropertyReport:
    # A only needs to hold x1 and x2, so A = {x1, x2} is the least demanding choice.
    u, t = filter.universe, filter.table
    for b in range(u.n_menus):
        for x2 in bits(t[b]):
            for x1 in bits(b & ~t[b]):
                a = 1 << x1 | 1 << x2
                w = {
                    "x1": u.alternatives[x1],
                    "x2": u.alternatives[x2],
                    "A": _menu(u, a),
                    "B": _menu(u, b),
                }
                return PropertyReport(Property.SENS_BETA_LITERAL, False, w)
    return PropertyReport(Property.SENS_BETA_LITERAL, True)


def _sens_beta_classical(filter: Filter) -> PropertyReport:
    # pairs[B] has bit (x1 * n + x2) set iff x1, x2 ∈ Γ(A) for some A ⊆ B,
    # computed by a subset-sum (zeta) transform over the menu lattice.
    u, t = filter.universe, filter.table
    n = len(u)
    pairs = []
    for a in range(u.n_menus):
        row = 0
        for x1 in bits(t[a]):
            row |= t[a] << (x1 * n)
        pairs.append(row)
    for i in range(n):
        bit = 1 << i
        for m in range(u.n_menus):
            if m & bit:
                pairs[m] |= pairs[m ^ bit]
    for b in range(u.n_menus):
        if not t[b]:
            continue
        for x1 in bits(b & ~t[b]):
            row = pairs[b] >> (x1 * n) & u.full_mask
            hit = row & t[b]
            if hit:
                x2 = next(bits(hit))
                need = 1 << x1 | 1 << x2
                a = next(s for s in submasks(b) if t[s] & need == need)
                w = {
                    "x1": u.alternatives[x1],
                    "x2": u.alternatives[x2],
                    "A": _menu(u, a),
                    "B": _menu(u, b),
                }
                return PropertyReport(Property.SENS_BETA_CLASSICAL, False, w)
    return PropertyReport(Property.SENS_BETA_CLASSICAL, True)


def check_io(filter: Filter) -> PropertyReport:
    """Each alternative is considered in every menu containing it, or in none.

    Equivalently Γ(A) = A ∩ Y with Y = Γ(X). The report's ``detail["Y"]``
    holds Γ(X) either way.
    """
    u, t = filter.universe, filter.table
    y = t[-1]
    full = u.full_mask
    for a in range(u.n_menus):
        diff = t[a] ^ (a & y)
        if diff:
            xi = next(bits(diff))
            x = u.alternatives[xi]
            if t[a] >> xi & 1:
                # considered in A but dropped from the full menu
                w = {"x": x, "considered_in": _menu(u, a), "dropped_in": _menu(u, full)}
            else:
                w = {"x": x, "considered_in": _menu(u, full), "dropped_in": _menu(u, a)}
            return PropertyReport(Property.IO, False, w, detail={"Y": _menu(u, y)})
    return PropertyReport(Property.IO, True, detail={"Y": _menu(u, y)})


def check_dio(ofilter: OrderedFilter, menu: Menu, factorial_cap: int = DEFAULT_FACTORIAL_CAP) -> PropertyReport:
    """The consideration set is the same for all |A|! orderings of ``menu``."""
    same_universe(ofilter.universe, menu.universe)
    if len(menu) > factorial_cap:
        raise CapacityError(
            f"menu of size {len(menu)} needs {math.factorial(len(menu))} orderings; "
            f"factorial cap is {factorial_cap}"
        )
    u = menu.universe
    first = None
    first_out = None
    for perm in itertools.permutations(menu.members):
        om = OrderedMenu(u, perm)
        out = ofilter(om)
        if first is None:
            first, first_out = om, out
        elif out != first_out:
            w = {
                "first_ordering": first,
                "first_result": first_out,
                "second_ordering": om,
                "second_result": out,
            }
            return PropertyReport(Property.DIO, False, w, parameter=menu)
    return PropertyReport(Property.DIO, True, parameter=menu)


def check_dio_all(ofilter: OrderedFilter, factorial_cap: int = DEFAULT_FACTORIAL_CAP) -> PropertyReport:
    """DIO on every menu of the universe, first failure by menu encoding."""
    u = ofilter.universe
    for m in range(u.n_menus):
        rep = check_dio(ofilter, Menu(u, m), factorial_cap)
        if not rep.holds:
            return rep
    return PropertyReport(Property.DIO, True, parameter=u.full)


def check_constant_number(filter: Filter, n: int) -> PropertyReport:
    """|Γ(A)| = n for every menu with |A| >= n; smaller menus are unconstrained."""
    if n < 0:
        raise ValidationError("constant number needs n >= 0")
    u, t = filter.universe, filter.table
    for a in range(u.n_menus):
        if popcount(a) >= n and popcount(t[a]) != n:
            w = {"A": _menu(u, a), "consideration_set": _menu(u, t[a]), "n": n}
            return PropertyReport(Property.CONSTANT_NUMBER, False, w, parameter=n)
    return PropertyReport(Property.CONSTANT_NUMBER, True, parameter=n)


def check_property(filter: Filter, prop: Property | str, n: int | None = None) -> PropertyReport:
    prop = Property(prop)
    if prop is Property.SENS_ALPHA:
        return check_sens_alpha(filter)
    if prop is Property.SENS_BETA_LITERAL:
        return check_sens_beta(filter, "literal")
    if prop is Property.SENS_BETA_CLASSICAL:
        return check_sens_beta(filter, "classical")
    if prop is Property.CONDITION_TAU:
        return check_condition_tau(filter)
    if prop is Property.IO:
        return check_io(filter)
    if prop is Property.CONSTANT_NUMBER:
        if n is None:
            raise ValidationError("constant number needs n")
        return check_constant_number(filter, n)
    if prop is Property.DIO:
        return check_dio_all(OrderedFilter.lift(filter))
    raise ValidationError(f"unknown property {prop!r}")


# -- witness replay ---------------------------------------------------------


def replay_witness(target, report: PropertyReport) -> bool:
    """True iff the report's witness violates the property's definition on ``target``.

    ``target`` is a :class:`Filter`, or an :class:`OrderedFilter` for DIO.
    Uses only the definitions, never the checkers.
    """
    w = report.witness
    if w is None:
        return False
    p = report.property
    if p is Property.DIO:
        a, b = w["first_ordering"], w["second_ordering"]
        return a.menu == b.menu and target(a) != target(b)
    g = target
    if p is Property.SENS_ALPHA:
        x, a, b = w["x"], w["A"], w["B"]
        return a <= b and x in a and x in g(b) and x not in g(a)
    if p is Property.CONDITION_TAU:
        x, a, b = w["x"], w["A"], w["B"]
        return a <= b and x in g(a) and x not in g(b)
    if p is Property.SENS_BETA_LITERAL:
        x1, x2, a, b = w["x1"], w["x2"], w["A"], w["B"]
        return a <= b and x1 in a and x2 in a and x2 in g(b) and x1 not in g(b)
    if p is Property.SENS_BETA_CLASSICAL:
        x1, x2, a, b = w["x1"], w["x2"], w["A"], w["B"]
        return (
            a <= b
            and x1 in g(a)
            and x2 in g(a)
            and x2 in g(b)
            and x1 not in g(b)
        )
    if p is Property.IO:
        x, yes, no = w["x"], w["considered_in"], w["dropped_in"]
        return x in g(yes) and x in no and x not in g(no)
    if p is Property.CONSTANT_NUMBER:
        a, n = w["A"], w["n"]
        return len(a) >= n and len(g(a)) != n
    raise ValidationError(f"cannot replay {p!r}")


def describe_witness(report: PropertyReport) -> str:
    """The defining implication instantiated at the witness."""
    w = report.witness
    if w is None:
        return "no violation"
    p = report.property
    if p is Property.SENS_ALPHA:
        return f"{w['x']!r} ∈ Γ({w['B']!r}) and {w['x']!r} ∈ {w['A']!r} ⊆ {w['B']!r}, but {w['x']!r} ∉ Γ({w['A']!r})"
    if p is Property.CONDITION_TAU:
        return f"{w['x']!r} ∈ Γ({w['A']!r}) and {w['A']!r} ⊆ {w['B']!r}, but {w['x']!r} ∉ Γ({w['B']!r})"
    if p in (Property.SENS_BETA_LITERAL, Property.SENS_BETA_CLASSICAL):
        where = "Γ(A)" if p is Property.SENS_BETA_CLASSICAL else "A"
        return (
            f"{w['x1']!r}, {w['x2']!r} ∈ {where} with A = {w['A']!r} ⊆ B = {w['B']!r} and "
            f"{w['x2']!r} ∈ Γ(B), but {w['x1']!r} ∉ Γ(B)"
        )
    if p is Property.IO:
        return (
            f"{w['x']!r} ∈ Γ({w['considered_in']!r}) but {w['x']!r} ∈ {w['dropped_in']!r} "
            f"and {w['x']!r} ∉ Γ({w['dropped_in']!r})"
        )
    if p is Property.DIO:
        return (
            f"Γ{w['first_ordering']!r} = {w['first_result']!r} but "
            f"Γ{w['second_ordering']!r} = {w['second_result']!r}"
        )
    if p is Property.CONSTANT_NUMBER:
        return (
            f"|{w['A']!r}| >= {w['n']} but |Γ({w['A']!r})| = |{w['consideration_set']!r}| "
            f"= {len(w['consideration_set'])}"
        )
    return repr(w)


# -- IO characterisation ------------------------------------------------------


def verify_theorem1(universe: Universe, mode: str = "exhaustive", samples: int = 10000, seed=0) -> TheoremReport:
    """Check IO ⟺ (Sen's α ∧ Condition τ) over many filters.

    ``exhaustive`` walks the whole filter space (|X| <= 3). ``sampled`` draws
    ``samples`` filters, alternating uniform random tables and random
    rule-backed filters.
    """
    report = TheoremReport(
        theorem="theorem-1", unit="filters",
        claim="IO holds iff Sen's alpha and Condition tau both hold",
        mode=mode,
    )
    if mode == "exhaustive":
        filters = enumerate_filters(universe)
    elif mode == "sampled":
        rng = make_rng(seed)
        filters = (
            random_filter_table(universe, rng) if i % 2 == 0 else random_rule_filter(universe, rng)
            for i in range(samples)
        )
        report.notes.append(f"seed={seed}, samples={samples}")
    else:
        raise ValidationError(f"unknown mode {mode!r}")
    io_count = 0
    for f in filters:
        io = check_io(f).holds
        both = check_sens_alpha(f).holds and check_condition_tau(f).holds
        report.checked += 1
        io_count += io
        if io == both:
            report.agreements += 1
        else:
            report.counterexamples.append(f)
    report.notes.append(f"{io_count} IO filters")
    return report
