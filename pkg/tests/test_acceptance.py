"""Acceptance criteria 1 to 12, one test each.

Each test prints a single PASS/FAIL line with its runtime and the limit it
is held to. Runtimes include the assertions.
"""

import io
import itertools
import time
from contextlib import contextmanager


from consideration import (
    Axiom,
    ChoiceDataset,
    FilterUtilityModel,
    Preference,
    RepresentationError,
    SatisficingPrefix,
    TopK,
    Universe,
    all_preferences,
    build_filter,
    check_commutative2,
    check_commutative_n,
    check_condition_tau,
    check_io,
    check_preference_for_flexibility,
    check_sens_alpha,
    check_warp,
    check_warp_co,
    check_warp_io,
    choose,
    choose_filter,
    construct_threshold_representation,
    enumerate_filters,
    enumerate_menus,
    evaluate_filter_utility,
    fixed_set_space,
    identity_filter,
    induced_filter,
    io_filters,
    loads,
    rational_dataset,
    rationalizability_oracle,
    replay_commutativity_witness,
    replay_warp_violation,
    replay_witness,
    save,
    verify_costless_full_consideration,
    verify_theorem1,
    verify_theorem2,
    verify_theorem3,
    verify_theorem6,
    verify_worthless_consideration,
)
from consideration.cli import generate, run
from consideration.representation import random_representation
from consideration.sampling import make_rng
from consideration.serialization import dumps

U2 = Universe.of_size(2)
U3 = Universe.of_size(3)
U4 = Universe.of_size(4)
U6 = Universe.of_size(6)


@contextmanager
def criterion(capsys, number, title, limit=None):
    info = {"detail": ""}
    start = time.perf_counter()
    budget = f" (limit {limit:g} s)" if limit else ""
    try:
        yield info
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        with capsys.disabled():
            print(f"\n[FAIL] criterion {number:2d}: {title}: {elapsed:.3f} s{budget}: {exc!r}")
        raise
    elapsed = time.perf_counter() - start
    ok = limit is None or elapsed < limit
    detail = f": {info['detail']}" if info["detail"] else ""
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title}: {elapsed:.3f} s{budget}{detail}")
    assert ok, f"criterion {number} took {elapsed:.3f} s, limit {limit} s"


CYCLE = [((1, 2), 1), ((2, 3), 2), ((1, 3), 3)]


def cycle_dataset(top=1):
    """Full-domain 3-cycle: cyclic pairs, singletons, and ``top`` chosen from {1, 2, 3}."""
    return ChoiceDataset.from_pairs(U3, [((x,), x) for x in U3] + CYCLE + [((1, 2, 3), top)])


def flat_convex_model(u):
    return FilterUtilityModel({x: 5.0 for x in u}, [float(k * k) for k in range(len(u) + 1)],
                              Preference(u, u.alternatives), 5.0)


def test_criterion_01_io_equivalence_exhaustive(capsys):
    with criterion(capsys, 1, "IO iff (alpha and tau) over all 4096 filters on |X|=3", 5) as c:
        rep = verify_theorem1(U3, "exhaustive")
        assert rep.checked == 4096
        assert rep.agreements == 4096 and not rep.counterexamples
        c["detail"] = rep.summary()


def test_criterion_02_io_pairs_commute(capsys):
    with criterion(capsys, 2, "all 64 ordered IO pairs on |X|=3 commute", 1) as c:
        rep = verify_theorem2(U3, "if")
        assert rep.checked == 64 and rep.agreements == 64 and not rep.counterexamples
        c["detail"] = rep.summary()


def test_criterion_03_converse_probe(capsys):
    with criterion(capsys, 3, "only-if probe over 256 pairs on |X|=2 surfaces candidates", 5) as c:
        rep = verify_theorem2(U2, "only_if")
        assert rep.checked == 256
        assert len(rep.candidates) >= 1
        assert any("counterexample candidates to the printed only-if claim" in n for n in rep.notes)
        ident = identity_filter(U2)
        pairs = [tuple(x["pair"]) for x in rep.candidates]
        non_io = [f for f in enumerate_filters(U2) if not check_io(f).holds]
        assert all((f, ident) in pairs and (ident, f) in pairs for f in non_io)
        c["detail"] = rep.summary()


def test_criterion_04_io_triples_commute(capsys):
    with criterion(capsys, 4, "all 512 IO triples on |X|=3 commute and collapse to A ∩ Y", 10) as c:
        rep = verify_theorem3(U3, 3)
        assert rep.checked == 512 and rep.agreements == 512 and not rep.counterexamples
        c["detail"] = rep.summary()


def test_criterion_05_threshold_roundtrip(capsys):
    with criterion(capsys, 5, "threshold roundtrip on |X|=4 and 1000 random reps on |X|=6 are IO", 5) as c:
        ios = io_filters(U4)
        assert len(ios) == 16
        for f in ios:
            back = induced_filter(construct_threshold_representation(f), U4)
            assert len(back.table) == 16 and back.table == f.table
        rng = make_rng(0)
        for _ in range(1000):
            assert check_io(induced_filter(random_representation(U6, rng), U6)).holds
        rep = verify_theorem6(U4)
        assert rep.checked == 16 and rep.holds
        c["detail"] = "16/16 tables reproduced, 1000/1000 induced filters IO"


def test_criterion_06_costless_full_consideration(capsys):
    with criterion(capsys, 6, "zero cost picks the menu's best alternative on all 16 menus of |X|=4", 1) as c:
        pref = Preference(U4, (3, 1, 4, 2))
        benefit = {x: float(10 - 2 * pref.rank(x)) for x in U4}
        model = FilterUtilityModel(benefit, [0.0] * 5, pref)
        space = fixed_set_space(U4)
        assert len(space) == 17
        menus = enumerate_menus(U4)
        rep = verify_costless_full_consideration(space, model, menus)
        assert rep.checked == 16 and rep.holds and not rep.precondition_failures
        for m in menus:
            ch = choose_filter(model, space, m)
            assert choose(pref, ch.filter(m)) == choose(pref, m)
        c["detail"] = rep.summary()


def test_criterion_07_worthless_consideration(capsys):
    with criterion(capsys, 7, "constant benefit, cost k^2: chosen size is the least eligible size", 1) as c:
        model = flat_convex_model(U4)
        space = fixed_set_space(U4)
        menus = enumerate_menus(U4)
        rep = verify_worthless_consideration(space, model, menus)
        assert rep.checked == 16 and rep.holds and not rep.precondition_failures
        for m in menus:
            ch = choose_filter(model, space, m)
            sizes = [len(f(m)) for f, ok in zip(space.filters, ch.eligible) if ok]
            assert len(ch.filter(m)) == min(sizes)
        c["detail"] = rep.summary()


def test_criterion_08_flexibility_reversal(capsys):
    with criterion(capsys, 8, "flexibility checker finds a superset-dominated reversal on |X|=3", 1) as c:
        model = flat_convex_model(U3)
        space = fixed_set_space(U3)
        reversals = []
        for m in enumerate_menus(U3):
            reversals += check_preference_for_flexibility(space, model, m).reversals
        assert reversals
        c["detail"] = f"{len(reversals)} reversals, e.g. {reversals[0]['superset']} < {reversals[0]['subset']}"


def test_criterion_09_warp_rationalizability(capsys):
    with criterion(capsys, 9, "WARP and oracle agree on 24 rational datasets and the 3-cycle", 5) as c:
        count = 0
        for p in all_preferences(U4):
            ds = rational_dataset(p)
            assert ds.is_full_domain
            assert check_warp(ds).satisfied
            q = rationalizability_oracle(ds)
            assert q is not None
            assert all(choose(q, m) == ch for m, ch in ds.items())
            count += 1
        assert count == 24
        found = []
        for top in U3:
            cyc = cycle_dataset(top)
            assert cyc.is_full_domain
            assert rationalizability_oracle(cyc) is None
            rep = check_warp(cyc)
            assert not rep.satisfied and rep.violations
            found.append(len(rep.violations))
        # pairs alone share no reversible pair of alternatives
        pairs_only = ChoiceDataset.from_pairs(U3, CYCLE)
        assert rationalizability_oracle(pairs_only) is None
        assert check_warp(pairs_only).satisfied
        c["detail"] = (
            f"24/24 rational datasets pass; full-domain 3-cycles: {found} WARP violations, oracle absent; "
            "pairs-only cycle passes pairwise WARP"
        )


def test_criterion_10_generate_and_audit(capsys):
    with criterion(capsys, 10, "200 seeded io-choice-datasets on |X|<=6 pass WARP-IO", 30) as c:
        gaps = 0
        for seed in range(200):
            size = 1 + seed % 6
            doc = generate("io-choice-dataset", size, seed)
            ds = loads(dumps(doc))
            assert ds.provenance["generator"] == "io-choice-dataset"
            rep = check_warp_io(ds)
            assert rep.satisfied and not rep.violations
            gaps += len(rep.coverage_gaps)
        c["detail"] = f"200/200 satisfied, {gaps} coverage gaps reported"


def negative_controls():
    """(label, replay-thunk) for every witness from the failing checks of criteria 1 to 10."""
    out = []
    # 1: every failing IO / alpha / tau report on |X|=3
    for f in enumerate_filters(U3):
        for rep in (check_io(f), check_sens_alpha(f), check_condition_tau(f)):
            if not rep.holds:
                out.append((f"c1 {rep.property.value}", lambda f=f, rep=rep: replay_witness(f, rep)))
    # 2, 3: every non-commuting pair on |X|=2
    fs = list(enumerate_filters(U2))
    for f1, f2 in itertools.product(fs, repeat=2):
        rep = check_commutative2(f1, f2)
        if not rep.commutative:
            out.append(("c2 commute", lambda f1=f1, f2=f2, rep=rep: replay_commutativity_witness([f1, f2], rep)))
    # 4: a non-commuting triple
    trip = [build_filter(U3, TopK((1, 2, 3), 1)), build_filter(U3, TopK((3, 2, 1), 1)), identity_filter(U3)]
    rep = check_commutative_n(trip)
    assert not rep.commutative
    out.append(("c4 commute-n", lambda rep=rep: replay_commutativity_witness(trip, rep)))
    # 5: representing a non-IO filter
    bad = build_filter(U2, SatisficingPrefix((1, 2), 1))
    try:
        construct_threshold_representation(bad)
    except RepresentationError as e:
        out.append(("c5 represent", lambda r=e.report: replay_witness(bad, r)))
    # 8: every flexibility reversal, recomputed from utilities
    model, space = flat_convex_model(U3), fixed_set_space(U3)
    by_label = dict(zip(space.labels, space.filters))
    for m in enumerate_menus(U3):
        for r in check_preference_for_flexibility(space, model, m).reversals:
            def replay(r=r, m=m):
                g1, g2 = by_label[r["superset"]], by_label[r["subset"]]
                return g2(m) <= g1(m) and evaluate_filter_utility(model, g1, m) < evaluate_filter_utility(model, g2, m)
            out.append(("c8 flexibility", replay))
    # 9: the 3-cycle
    for top in U3:
        cyc = cycle_dataset(top)
        for v in check_warp(cyc).violations:
            out.append(("c9 warp", lambda v=v, cyc=cyc: replay_warp_violation(cyc, Axiom.WARP, v)))
    # 10: WARP-IO and WARP-CO falsifiers
    part2 = ChoiceDataset.from_pairs(U2, [((2,), None), ((1, 2), 2)])
    part1 = ChoiceDataset.from_pairs(
        U3, [((1,), 1), ((2,), 2), ((3,), 3), ((1, 2), 1), ((1, 3), 1), ((2, 3), 2), ((1, 2, 3), 2)]
    )
    overload = ChoiceDataset.from_pairs(U4, [((1, 2), 2), ((1, 2, 3), 1), ((1, 2, 4), 1), ((1, 2, 3, 4), 2)])
    for ds in (part1, part2):
        rep = check_warp_io(ds)
        assert rep.violations
        for v in rep.violations:
            out.append(("c10 warp-io", lambda v=v, ds=ds: replay_warp_violation(ds, Axiom.WARP_IO, v)))
    rep = check_warp_co(overload)
    assert rep.violations
    for v in rep.violations:
        out.append(("c10 warp-co", lambda v=v: replay_warp_violation(overload, Axiom.WARP_CO, v)))
    return out


def test_criterion_11_witness_replay(capsys):
    with criterion(capsys, 11, "every negative-control witness replays as a violation") as c:
        controls = negative_controls()
        failed = [label for label, replay in controls if not replay()]
        kinds = sorted({label.split()[0] for label, _ in controls})
        assert not failed, failed[:5]
        c["detail"] = f"{len(controls)}/{len(controls)} replayed (controls from {', '.join(kinds)})"


def machine(argv):
    out = io.StringIO()
    status = run([*argv, "--format", "machine"], stdout=out, stderr=io.StringIO())
    return status, out.getvalue().encode()


def test_criterion_12_determinism(capsys, tmp_path):
    with criterion(capsys, 12, "repeated runs give byte-identical machine reports") as c:
        save(flat_convex_model(U3), tmp_path / "model.json")
        save(fixed_set_space(U3), tmp_path / "space.json")
        save(cycle_dataset(), tmp_path / "cycle.json")
        runs = [
            ["verify", "--theorem", "1", "--exhaustive", "--size", "3"],
            ["verify", "--theorem", "1", "--samples", "300", "--seed", "5", "--size", "6"],
            ["verify", "--theorem", "2", "--size", "3"],
            ["verify", "--theorem", "2", "--direction", "only-if", "--size", "2"],
            ["verify", "--theorem", "3", "--size", "3"],
            ["verify", "--theorem", "3", "--n", "4", "--samples", "100", "--seed", "3", "--size", "6"],
            ["verify", "--theorem", "6", "--size", "4"],
            ["verify", "--theorem", "6", "--samples", "1000", "--seed", "0", "--size", "6"],
            ["verify", "--theorem", "4", "--size", "4"],
            ["verify", "--theorem", "5", "--size", "4"],
            ["check", "--property", "flexibility", "--in", str(tmp_path / "model.json"), "--in", str(tmp_path / "space.json")],
            ["audit", "--in", str(tmp_path / "cycle.json")],
        ]
        for seed in (0, 7, 42):
            for kind in ("io-choice-dataset", "rational-choice-dataset", "random-filter-table", "rule-filter"):
                a, b = (dumps(generate(kind, 4, seed)) for _ in range(2))
                assert a == b
                path = tmp_path / f"{kind}-{seed}.json"
                path.write_text(a)
                if kind.endswith("dataset"):
                    runs.append(["audit", "--in", str(path)])
        for argv in runs:
            first, second = machine(argv), machine(argv)
            assert first == second, argv
        c["detail"] = f"{len(runs)} report pairs and 12 generated files identical"
