import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from consideration import (
    CapacityError,
    ChoiceDataset,
    DomainMismatchError,
    Filter,
    FixedSet,
    Menu,
    Preference,
    SatisficingPrefix,
    Threshold,
    TopK,
    Universe,
    ValidationError,
    apply_filter,
    build_filter,
    check_choice_membership,
    choose,
    enumerate_menus,
    fixed_set_filter,
    identity_filter,
)
from consideration.sampling import make_rng, random_filter_table

from oracles import as_sets, powerset

X9 = Universe.of_size(9)


def test_enumerate_nine_alternatives_gives_512_menus():
    menus = enumerate_menus(X9)
    assert len(menus) == 512
    assert len({m.mask for m in menus}) == 512


def test_enumerate_empty_universe():
    menus = enumerate_menus(Universe(()))
    assert len(menus) == 1 and not menus[0]


def test_enumerate_two_alternatives_in_encoding_order():
    u = Universe(("a", "b"))
    assert [m.members for m in enumerate_menus(u)] == [(), ("a",), ("b",), ("a", "b")]


def test_enumerate_matches_powerset_oracle():
    u = Universe.of_size(5)
    got = {frozenset(m.members) for m in enumerate_menus(u)}
    assert got == set(powerset(range(1, 6)))


def test_universe_cap():
    with pytest.raises(CapacityError):
        Universe.of_size(17)
    assert len(Universe.of_size(4, cap=4)) == 4
    with pytest.raises(CapacityError):
        Universe.of_size(5, cap=4)


def test_duplicate_alternatives_rejected():
    with pytest.raises(ValidationError):
        Universe((1, 1))


def test_apply_fixed_set_example():
    u5 = Universe.of_size(5)
    f = fixed_set_filter(u5, [2, 3])
    assert apply_filter(f, u5.full).members == (2, 3)
    g = fixed_set_filter(X9, [2, 3])
    assert not apply_filter(g, X9.menu([1, 4, 7]))


def test_apply_empty_menu_is_empty():
    f = build_filter(X9, TopK(tuple(range(9, 0, -1)), 3))
    assert not apply_filter(f, X9.empty)


def test_apply_domain_mismatch():
    f = identity_filter(Universe.of_size(3))
    with pytest.raises(DomainMismatchError):
        apply_filter(f, Universe(("a", "b", "c")).full)


def test_fixed_set_filter_on_nine_matches_intersection_oracle():
    f = build_filter(X9, FixedSet((2, 3)))
    y = frozenset({2, 3})
    assert all(img == a & y for a, img in as_sets(f).items())
    assert f.rule == FixedSet((2, 3))


def test_top_zero_is_empty_filter():
    f = build_filter(X9, TopK(tuple(range(1, 10)), 0))
    assert set(f.table) == {0}


def test_threshold_indicator_equals_fixed_set():
    scores = {x: 1.0 if x in (2, 3) else 0.0 for x in X9}
    assert build_filter(X9, Threshold(scores, 1.0)) == fixed_set_filter(X9, [2, 3])


@pytest.mark.parametrize(
    "rule",
    [
        FixedSet((10,)),
        TopK((1, 2), 1),
        TopK(tuple(range(1, 10)), -1),
        Threshold({1: 1.0}, 0.0),
        SatisficingPrefix((1, 1, 2, 3, 4, 5, 6, 7, 8), 1),
    ],
)
def test_malformed_rules_rejected(rule):
    with pytest.raises(ValidationError):
        build_filter(X9, rule)


def test_non_contractive_table_rejected():
    u = Universe.of_size(2)
    with pytest.raises(ValidationError):
        Filter(u, (0, 0b10, 0b10, 0b11))
    with pytest.raises(ValidationError):
        Filter(u, (0, 1, 2))


def test_choose_examples():
    p = Preference(X9, (2, 3, 1, 4, 5, 6, 7, 8, 9))
    assert choose(p, X9.menu([1, 2, 3])) == 2
    assert choose(p, X9.empty) is None
    assert choose(p, X9.menu([7])) == 7


def test_choice_membership_examples():
    u = Universe.of_size(5)
    f = fixed_set_filter(u, [2, 3])
    ok = ChoiceDataset.from_pairs(u, [((1, 2, 3), 2)])
    bad = ChoiceDataset.from_pairs(u, [((1, 2, 3), 1)])
    assert check_choice_membership(ok, f) == []
    assert check_choice_membership(bad, f) == [u.menu([1, 2, 3])]
    assert check_choice_membership(ChoiceDataset(u, {}), f) == []


def test_none_record_is_never_a_violation():
    u = Universe.of_size(3)
    ds = ChoiceDataset.from_pairs(u, [((1, 2), None)])
    assert check_choice_membership(ds, identity_filter(u)) == []


def test_dataset_rejects_choice_outside_menu():
    u = Universe.of_size(3)
    with pytest.raises(ValidationError):
        ChoiceDataset.from_pairs(u, [((1, 2), 3)])
    with pytest.raises(ValidationError):
        ChoiceDataset.from_pairs(u, [((1, 2), 1), ((2, 1), 2)])


def test_menu_algebra_and_repr():
    u = Universe.of_size(4)
    a, b = u.menu([1, 2]), u.menu([2, 3])
    assert (a & b).members == (2,)
    assert (a | b).members == (1, 2, 3)
    assert (a - b).members == (1,)
    assert a <= u.full and not a <= b
    assert repr(a) == "{1, 2}"
    assert Menu(u, 0b11) == a


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 6), st.integers(0, 2**32 - 1))
def test_random_tables_are_contractive(n, seed):
    u = Universe.of_size(n)
    f = random_filter_table(u, make_rng(seed))
    for m in enumerate_menus(u):
        assert apply_filter(f, m) <= m


@settings(max_examples=80, deadline=None)
@given(st.permutations(list(range(1, 7))), st.sets(st.integers(1, 6), min_size=1))
def test_choose_in_menu_and_invariant_under_worse_additions(order, members):
    u = Universe.of_size(6)
    p = Preference(u, tuple(order))
    a = u.menu(members)
    best = choose(p, a)
    assert best in a
    worse = [x for x in u if p.prefers(best, x)]
    assert choose(p, a | u.menu(worse)) == best
