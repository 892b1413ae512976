"""Batch command line: ``consideration <command> [options]``.

Exit status: 0 when the property holds or the task succeeded, 1 when a
property fails or counterexamples turn up (witnesses are in the report),
2 on input or validation errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any, Sequence

from . import attention, axioms, representation, sampling, sequential
from .attention import FilterSpace, FilterUtilityModel
from .core import (
    DEFAULT_UNIVERSE_CAP,
    ChoiceDataset,
    Filter,
    OrderedFilter,
    Preference,
    Universe,
    check_choice_membership,
    enumerate_menus,
)
from .errors import ConsiderationError, RepresentationError
from .serialization import SCHEMA_VERSION, dumps, jsonable, load, representation_to_dict, to_document

COMMANDS = ("check", "compose", "commute", "choose-filter", "represent", "audit", "verify", "generate")

PROPERTY_ALIASES = {
    "alpha": "sens-alpha",
    "sens-alpha": "sens-alpha",
    "beta": "sens-beta-classical",
    "beta-classical": "sens-beta-classical",
    "sens-beta-classical": "sens-beta-classical",
    "beta-literal": "sens-beta-literal",
    "sens-beta-literal": "sens-beta-literal",
    "tau": "condition-tau",
    "condition-tau": "condition-tau",
    "io": "io",
    "dio": "dio",
    "cn": "constant-number",
    "constant-number": "constant-number",
    "membership": "membership",
    "convex-cost": "convex-cost",
    "flexibility": "flexibility",
}

DISPLAY = {
    "sens-alpha": "Sen's alpha",
    "sens-beta-literal": "Sen's beta (literal)",
    "sens-beta-classical": "Sen's beta (classical)",
    "condition-tau": "Condition tau",
    "io": "IO",
    "dio": "DIO",
    "constant-number": "Constant Number",
}

GENERATORS = ("random-filter-table", "rule-filter", "rational-choice-dataset", "io-choice-dataset")


class UsageError(ConsiderationError):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="consideration", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--in", dest="inputs", action="append", default=[], metavar="FILE")
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--property")
    p.add_argument("--theorem")
    p.add_argument("--direction", default="if", choices=("if", "only-if", "only_if"))
    p.add_argument("--n", type=int)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("human", "machine"), default="human")
    p.add_argument("--universe-cap", type=int, default=DEFAULT_UNIVERSE_CAP)
    p.add_argument("--factorial-cap", type=int, default=axioms.DEFAULT_FACTORIAL_CAP)
    p.add_argument("--permutation-cap", type=int, default=sequential.DEFAULT_PERMUTATION_CAP)
    p.add_argument("--kind", choices=GENERATORS, help="generator kind (generate)")
    p.add_argument("--size", type=int, help="universe size for generate/verify without --in")
    return p


# -- helpers ----------------------------------------------------------------


def _load_inputs(args) -> list:
    return [load(path, cap=args.universe_cap) for path in args.inputs]


def _pick(objs: list, cls, what: str, count: int | None = 1):
    found = [o for o in objs if isinstance(o, cls)]
    if count is not None and len(found) < count:
        raise UsageError(f"expected {count} {what} input(s) via --in, got {len(found)}")
    return found if count is None else found[:count]


def _universe(args, objs) -> Universe:
    for o in objs:
        if isinstance(o, Universe):
            return o
        u = getattr(o, "universe", None)
        if isinstance(u, Universe):
            return u
    if args.size is not None:
        return Universe.of_size(args.size, cap=args.universe_cap)
    raise UsageError("needs a universe: pass --in FILE or --size K")


def _property_line(rep: axioms.PropertyReport) -> str:
    name = DISPLAY[rep.property.value]
    text = f"{name}: {'holds' if rep.holds else 'fails'}"
    if "Y" in rep.detail and rep.holds:
        text += f", Y={rep.detail['Y']!r}"
    if rep.parameter is not None and rep.property is axioms.Property.CONSTANT_NUMBER:
        text += f" (n={rep.parameter})"
    if not rep.holds:
        text += f"; witness: {axioms.describe_witness(rep)}"
    return text


def _theorem_lines(rep) -> list[str]:
    lines = [rep.summary()]
    lines += [f"  note: {n}" for n in rep.notes[:20]]
    for c in rep.counterexamples[:10]:
        lines.append(f"  counterexample: {jsonable(c)}")
    for c in rep.candidates[:10]:
        lines.append(f"  counterexample candidate: {jsonable(c)}")
    if len(rep.candidates) > 10:
        lines.append(f"  ... {len(rep.candidates) - 10} more candidates (see --format machine)")
    return lines


# -- commands ---------------------------------------------------------------
#
# Each returns (status, result, human lines).


def cmd_check(args, objs):
    prop = PROPERTY_ALIASES.get((args.property or "").lower())
    if prop is None:
        raise UsageError(f"--property must be one of {', '.join(sorted(PROPERTY_ALIASES))}")
    if prop == "membership":
        (ds,) = _pick(objs, ChoiceDataset, "choice-dataset")
        (f,) = _pick(objs, Filter, "filter")
        bad = check_choice_membership(ds, f)
        result = {"property": prop, "holds": not bad, "violations": bad}
        lines = [f"membership: {'holds' if not bad else 'fails'}"]
        lines += [f"  c({m!r}) = {ds.choice(m)!r} ∉ Γ({m!r}) = {f(m)!r}" for m in bad]
        return (0 if not bad else 1), result, lines
    if prop == "convex-cost":
        (model,) = _pick(objs, FilterUtilityModel, "utility-model")
        rep = attention.check_convex_cost(model)
        line = f"convex-cost: {'holds' if rep.convex else 'fails'}"
        if not rep.convex:
            line += f" at k={rep.witness}: {rep.reason}"
        return (0 if rep.convex else 1), rep, [line]
    if prop == "flexibility":
        (model,) = _pick(objs, FilterUtilityModel, "utility-model")
        (space,) = _pick(objs, FilterSpace, "filter-space")
        reports = []
        lines = []
        for menu in enumerate_menus(model.universe):
            rep = attention.check_preference_for_flexibility(space, model, menu)
            reports.append({"menu": menu, "report": rep})
            for r in rep.reversals:
                lines.append(
                    f"  reversal at {menu!r}: {r['superset']} ({r['superset_utility']}) "
                    f"loses to {r['subset']} ({r['subset_utility']})"
                )
        holds = all(r["report"].holds for r in reports)
        lines.insert(0, f"flexibility: {'holds' if holds else 'fails'}")
        return (0 if holds else 1), {"property": prop, "holds": holds, "menus": reports}, lines
    if prop == "dio":
        ofs = _pick(objs, OrderedFilter, "ordered-filter", None)
        if ofs:
            of = ofs[0]
        else:
            (f,) = _pick(objs, Filter, "filter or ordered-filter")
            of = OrderedFilter.lift(f)
        rep = axioms.check_dio_all(of, args.factorial_cap)
        return (0 if rep.holds else 1), rep, [_property_line(rep)]
    (f,) = _pick(objs, Filter, "filter")
    if prop == "constant-number" and args.n is None:
        raise UsageError("--property constant-number needs --n")
    rep = axioms.check_property(f, prop, args.n)
    return (0 if rep.holds else 1), rep, [_property_line(rep)]


def cmd_compose(args, objs):
    filters = _pick(objs, Filter, "filter", None)
    if not filters:
        raise UsageError("compose needs at least one --in filter")
    out = sequential.compose_n(filters)
    if args.out:
        Path(args.out).write_text(dumps(to_document(out)), encoding="utf-8")
    lines = [f"composed {len(filters)} filters (applied in --in order)"]
    lines += [f"  Γ({m!r}) = {img!r}" for m, img in out.items()]
    return 0, {"filters": len(filters), "composite": out}, lines


def cmd_commute(args, objs):
    filters = _pick(objs, Filter, "filter", None)
    if len(filters) < 1:
        raise UsageError("commute needs --in filters")
    if len(filters) == 2:
        rep = sequential.check_commutative2(*filters)
    else:
        rep = sequential.check_commutative_n(filters, args.permutation_cap)
    line = f"commutative: {'yes' if rep.commutative else 'no'}; IO status {list(rep.io_status)}"
    lines = [line]
    if rep.witness:
        w = rep.witness
        lines.append(
            f"  at {w['menu']!r}: order {list(w['order_a'])} gives {w['result_a']!r}, "
            f"order {list(w['order_b'])} gives {w['result_b']!r}"
        )
    return (0 if rep.commutative else 1), rep, lines


def cmd_choose_filter(args, objs):
    (model,) = _pick(objs, FilterUtilityModel, "utility-model")
    (space,) = _pick(objs, FilterSpace, "filter-space")
    convex = attention.check_convex_cost(model)
    rows = []
    lines = [f"cost convex: {convex.convex}"]
    for menu in enumerate_menus(model.universe):
        ch = attention.choose_filter(model, space, menu)
        rows.append({"menu": menu, "choice": ch.label, "index": ch.index, "utilities": ch.utilities,
                     "eligible": ch.eligible, "mandate_binding": ch.mandate_binding})
        lines.append(f"  {menu!r}: {ch.label} (utility {ch.utility})")
    return 0, {"convexity": convex, "choices": rows, "labels": list(space.labels)}, lines


def cmd_represent(args, objs):
    (f,) = _pick(objs, Filter, "filter")
    try:
        rep = representation.construct_threshold_representation(f)
    except RepresentationError as e:
        io = e.report
        return 1, {"representable": False, "io": io}, [
            "not representable: filter is not IO",
            f"  witness: {axioms.describe_witness(io)}",
        ]
    doc = representation_to_dict(rep, f.universe)
    if args.out:
        Path(args.out).write_text(dumps(doc), encoding="utf-8")
    back = representation.induced_filter(rep, f.universe)
    lines = [f"representable: u1={rep.u1}, k*={rep.k_star}", f"  induced filter reproduces table: {back == f}"]
    return 0, {"representable": True, "representation": doc, "roundtrip": back == f}, lines


def cmd_audit(args, objs):
    (ds,) = _pick(objs, ChoiceDataset, "choice-dataset")
    which = (args.property or "all").lower()
    checks = {
        "warp": representation.check_warp,
        "warp-co": representation.check_warp_co,
        "warp-io": representation.check_warp_io,
    }
    if which not in (*checks, "oracle", "all"):
        raise UsageError("--property for audit must be warp, warp-co, warp-io, oracle or all")
    result: dict[str, Any] = {}
    lines = []
    ok = True
    for name, fn in checks.items():
        if which not in (name, "all"):
            continue
        rep = fn(ds)
        result[name] = rep
        ok &= rep.satisfied
        lines.append(f"{name}: {'satisfied' if rep.satisfied else 'violated'} "
                     f"({len(rep.violations)} violations, {len(rep.coverage_gaps)} coverage gaps)")
        lines += [f"  violation: {jsonable(v)}" for v in rep.violations[:10]]
    if which in ("oracle", "all"):
        if len(ds.universe) <= representation.ORACLE_CAP:
            pref = representation.rationalizability_oracle(ds)
            result["oracle"] = {"rationalizable": pref is not None, "preference": pref}
            lines.append(f"oracle: {'order ' + repr(list(pref.order)) if pref else 'no rationalizing order'}")
            if which == "oracle":
                ok &= pref is not None
        else:
            lines.append("oracle: skipped, universe above oracle cap")
    return (0 if ok else 1), result, lines


def cmd_verify(args, objs):
    t = (args.theorem or "").lower().replace("theorem-", "")
    u = _universe(args, objs)
    exhaustive = not args.samples
    if t == "1":
        if exhaustive:
            rep = axioms.verify_theorem1(u, "exhaustive")
        else:
            rep = axioms.verify_theorem1(u, "sampled", args.samples, args.seed)
    elif t == "2":
        rep = sequential.verify_theorem2(u, args.direction, args.samples or 1000, args.seed)
    elif t == "3":
        rep = sequential.verify_theorem3(u, args.n or 3, args.samples or 1000, args.seed, args.permutation_cap)
    elif t in ("4", "5"):
        models = _pick(objs, FilterUtilityModel, "utility-model", None)
        spaces = _pick(objs, FilterSpace, "filter-space", None)
        space = spaces[0] if spaces else attention.fixed_set_space(u)
        model = models[0] if models else default_model(u, t)
        menus = enumerate_menus(u)
        if t == "4":
            rep = attention.verify_costless_full_consideration(space, model, menus)
        else:
            rep = attention.verify_worthless_consideration(space, model, menus)
    elif t == "6":
        rep = representation.verify_theorem6(u, args.samples or 0, args.seed)
    else:
        raise UsageError("--theorem must be 1..6")
    status = 0 if rep.holds and not rep.candidates else 1
    return status, rep, _theorem_lines(rep)


def default_model(u: Universe, theorem: str) -> FilterUtilityModel:
    """Zero cost and strictly increasing benefit (4), or constant benefit and k² cost (5)."""
    pref = Preference(u, u.alternatives)
    n = len(u)
    if theorem == "4":
        benefit = {x: float(n - r) for r, x in enumerate(pref.order)}
        return FilterUtilityModel(benefit, [0.0] * (n + 1), pref)
    return FilterUtilityModel({x: 5.0 for x in u}, [float(k * k) for k in range(n + 1)], pref, 5.0)


def cmd_generate(args, objs):
    if args.kind is None:
        raise UsageError(f"generate needs --kind, one of {', '.join(GENERATORS)}")
    doc = generate(args.kind, args.size if args.size is not None else 4, args.seed, args.universe_cap)
    text = dumps(doc)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    return 0, doc, [f"generated {args.kind} (seed {args.seed})" + (f" -> {args.out}" if args.out else "")]


def generate(kind: str, size: int, seed: int, cap: int = DEFAULT_UNIVERSE_CAP) -> dict:
    """Seeded input document of the given generator kind."""
    u = Universe.of_size(size, cap=cap)
    rng = sampling.make_rng(seed)
    prov = {"generator": kind, "seed": seed, "size": size}
    if kind == "random-filter-table":
        return to_document(sampling.random_filter_table(u, rng))
    if kind == "rule-filter":
        return to_document(sampling.random_rule_filter(u, rng))
    if kind == "rational-choice-dataset":
        pref = sampling.random_preference(u, rng)
        prov["preference"] = list(pref.order)
        return to_document(representation.rational_dataset(pref, provenance=prov))
    if kind == "io-choice-dataset":
        rep = representation.random_representation(u, rng)
        agg = representation.random_aggregate(u, rng)
        prov["u1"] = [[x, rep.u1[x]] for x in u]
        prov["k_star"] = rep.k_star
        prov["aggregate"] = [[x, agg.value[x]] for x in u]
        return to_document(representation.threshold_dataset(rep, agg, u, provenance=prov))
    raise UsageError(f"unknown generator {kind!r}")


HANDLERS = {
    "check": cmd_check,
    "compose": cmd_compose,
    "commute": cmd_commute,
    "choose-filter": cmd_choose_filter,
    "represent": cmd_represent,
    "audit": cmd_audit,
    "verify": cmd_verify,
    "generate": cmd_generate,
}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        objs = _load_inputs(args)
        status, result, lines = HANDLERS[args.command](args, objs)
    except ConsiderationError as e:
        print(f"error: {e}", file=stderr)
        return 2
    if args.format == "machine":
        report = {
            "schema_version": SCHEMA_VERSION,
            "command": args.command,
            "status": status,
            "result": jsonable(result),
        }
        text = dumps(report)
    else:
        text = "\n".join(lines) + "\n"
    if args.out and args.command not in ("compose", "represent", "generate"):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        stdout.write(text)
    return status


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
