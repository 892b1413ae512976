import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from consideration import (
    CapacityError,
    DomainMismatchError,
    FilterSequence,
    SatisficingPrefix,
    TopK,
    Universe,
    ValidationError,
    build_filter,
    check_commutative2,
    check_commutative_n,
    check_io,
    compose2,
    compose_n,
    empty_filter,
    enumerate_filters,
    fixed_set_filter,
    identity_filter,
    io_filters,
    replay_commutativity_witness,
    verify_theorem2,
    verify_theorem3,
)
from consideration.sampling import make_rng, random_filter_table, random_subset

import oracles

U2 = Universe.of_size(2)
U3 = Universe.of_size(3)
U4 = Universe.of_size(4)


def top1(u, order):
    return build_filter(u, TopK(tuple(order), 1))


def test_fixed_sets_compose_to_intersection():
    f = compose2(fixed_set_filter(U4, [1, 2, 3]), fixed_set_filter(U4, [2, 3, 4]))
    assert f == fixed_set_filter(U4, [2, 3])


def test_compose2_matches_set_oracle():
    rng = make_rng(11)
    for _ in range(50):
        f1, f2 = random_filter_table(U3, rng), random_filter_table(U3, rng)
        assert oracles.as_sets(compose2(f1, f2)) == oracles.compose(oracles.as_sets(f1), oracles.as_sets(f2))


def test_order_of_application_is_first_then_second():
    f = compose2(top1(U2, (2, 1)), fixed_set_filter(U2, [1]))
    assert not f(U2.full)


def test_identity_unit_and_empty_absorbing():
    ident, zero = identity_filter(U3), empty_filter(U3)
    for f in itertools.islice(enumerate_filters(U3), 0, 4096, 97):
        assert compose2(ident, f) == f and compose2(f, ident) == f
        assert compose_n([f, zero, f]) == zero


def test_compose_n_examples():
    ys = [[1, 2, 3], [2, 3, 4], [3, 4]]
    f = compose_n([fixed_set_filter(U4, y) for y in ys])
    assert f == fixed_set_filter(U4, [3])
    g = random_filter_table(U4, make_rng(0))
    assert compose_n([g]) == g
    assert compose_n(FilterSequence((g, g))) == compose2(g, g)


def test_sequence_validation():
    with pytest.raises(ValidationError):
        FilterSequence(())
    with pytest.raises(DomainMismatchError):
        compose2(identity_filter(U2), identity_filter(U3))


def test_io_filters_commute():
    rep = check_commutative2(fixed_set_filter(U3, [1, 2]), fixed_set_filter(U3, [2, 3]))
    assert rep.commutative and rep.witness is None and rep.io_status == (True, True)


def test_opposite_top_one_filters_do_not_commute():
    f1, f2 = top1(U2, (1, 2)), top1(U2, (2, 1))
    rep = check_commutative2(f1, f2)
    assert not rep.commutative
    w = rep.witness
    assert w["menu"] == U2.full
    assert w["result_a"] == U2.menu([1]) and w["result_b"] == U2.menu([2])
    assert replay_commutativity_witness([f1, f2], rep)


def test_filter_commutes_with_itself():
    for f in enumerate_filters(U2):
        assert check_commutative2(f, f).commutative


def test_five_fixed_sets_commute_over_all_orderings():
    u = Universe.of_size(6)
    fs = [fixed_set_filter(u, y) for y in ([1, 2, 3, 4], [2, 3, 4, 5], [1, 3, 4, 6], [3, 4, 5, 6], [2, 3, 4])]
    assert check_commutative_n(fs).commutative


def test_three_with_opposite_tops_fails_and_replays():
    fs = [top1(U2, (1, 2)), top1(U2, (2, 1)), identity_filter(U2)]
    rep = check_commutative_n(fs)
    assert not rep.commutative
    assert replay_commutativity_witness(fs, rep)
    assert check_commutative_n(fs[:1]).commutative


def test_permutation_cap():
    fs = [identity_filter(U2)] * 4
    with pytest.raises(CapacityError):
        check_commutative_n(fs, permutation_cap=3)


def test_empty_menu_neutral_for_every_pair():
    fs = list(enumerate_filters(U2))
    for f1, f2 in itertools.product(fs, repeat=2):
        assert compose2(f1, f2).table[0] == compose2(f2, f1).table[0] == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(2, 4), st.integers(0, 2**32 - 1))
def test_contractive_cascade(n, k, seed):
    u = Universe.of_size(n)
    rng = make_rng(seed)
    fs = [random_filter_table(u, rng) for _ in range(k)]
    for m in range(u.n_menus):
        sizes, cur = [bin(m).count("1")], m
        for f in fs:
            cur = f.table[cur]
            sizes.append(bin(cur).count("1"))
        assert sizes == sorted(sizes, reverse=True)


def test_io_closure_exhaustive_on_four():
    ios = io_filters(U4)
    for f1, f2 in itertools.product(ios, repeat=2):
        c = compose2(f1, f2)
        rep = check_io(c)
        assert rep.holds
        assert c(U4.full) == f1(U4.full) & f2(U4.full)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_io_tuples_commute_on_six(seed):
    u = Universe.of_size(6)
    rng = make_rng(seed)
    fs = [fixed_set_filter(u, random_subset(u, rng)) for _ in range(3)]
    assert check_commutative_n(fs).commutative


def test_io_pairs_commute_exhaustive():
    rep = verify_theorem2(U3, "if")
    assert rep.checked == 64 and rep.holds


def test_io_pairs_commute_sampled():
    rep = verify_theorem2(Universe.of_size(6), "if", samples=300, seed=2)
    assert rep.checked == 300 and rep.holds


def test_converse_probe_reports_candidates():
    rep = verify_theorem2(U2, "only-if")
    assert rep.checked == 256
    assert rep.candidates
    assert any("counterexample candidates" in n for n in rep.notes)
    ident = identity_filter(U2)
    first = build_filter(U2, SatisficingPrefix((1, 2), 1))
    pairs = [tuple(c["pair"]) for c in rep.candidates]
    assert (first, ident) in pairs and (first, first) in pairs
    for c in rep.candidates:
        f1, f2 = c["pair"]
        assert check_commutative2(f1, f2).commutative
        assert not (check_io(f1).holds and check_io(f2).holds)


def test_converse_probe_cap():
    with pytest.raises(CapacityError):
        verify_theorem2(U3, "only_if")


def test_io_triples_commute_exhaustive():
    rep = verify_theorem3(U3, 3)
    assert rep.checked == 512 and rep.holds


def test_io_tuples_of_two_agree_with_pairs():
    assert verify_theorem3(U3, 2).checked == verify_theorem2(U3, "if").checked == 64


def test_io_tuples_of_four_sampled_on_six():
    rep = verify_theorem3(Universe.of_size(6), 4, samples=300, seed=5)
    assert rep.checked == 300 and rep.holds
