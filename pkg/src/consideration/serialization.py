"""JSON file formats.

Every document is an object with a top-level ``kind``: universe, filter,
ordered-filter, utility-model, choice-dataset, filter-space or
threshold-representation. Menus are written as alternative lists in
canonical order. Filters are written extensionally as ``[menu, image]``
pairs, with the generating rule (if any) alongside. A filter document
without a table is built from its rule.
"""

from __future__ import annotations

import dataclasses
import enum
import json
from pathlib import Path
from typing import Any

from .attention import FilterSpace, FilterUtilityModel
from .core import (
    DEFAULT_UNIVERSE_CAP,
    ChoiceDataset,
    ExplicitTable,
    Filter,
    FixedSet,
    Menu,
    OrderedFilter,
    OrderedMenu,
    Preference,
    SatisficingPrefix,
    Threshold,
    TopK,
    Universe,
    build_filter,
)
from .errors import ConsiderationError, ValidationError
from .representation import ThresholdRepresentation

SCHEMA_VERSION = 1

KINDS = (
    "universe",
    "filter",
    "ordered-filter",
    "utility-model",
    "choice-dataset",
    "filter-space",
    "threshold-representation",
)


class ParseError(ValidationError):
    """Bad input document; the message names the file and JSON location."""


def _require(doc: dict, key: str, where: str):
    if key not in doc:
        raise ParseError(f"{where}: missing key {key!r}")
    return doc[key]


def _menu_list(menu: Menu) -> list:
    return list(menu.members)


# -- encoding ---------------------------------------------------------------


def rule_to_dict(rule) -> dict | None:
    return None if rule is None else rule.to_dict()


def filter_to_dict(f: Filter, with_universe: bool = True) -> dict:
    u = f.universe
    d: dict[str, Any] = {"kind": "filter"}
    if with_universe:
        d["universe"] = list(u.alternatives)
    d["rule"] = rule_to_dict(f.rule)
    d["table"] = [[list(u.members_of(m)), list(u.members_of(img))] for m, img in enumerate(f.table)]
    return d


def ordered_filter_to_dict(of: OrderedFilter) -> dict:
    if of.descriptor is None:
        raise ValidationError("ordered filter has no serialisable descriptor")
    rule = dict(of.descriptor)
    if rule.get("type") == "lift":
        rule["filter"] = filter_to_dict(rule["filter"], with_universe=False)
    return {"kind": "ordered-filter", "universe": list(of.universe.alternatives), "rule": rule}


def model_to_dict(model: FilterUtilityModel) -> dict:
    u = model.universe
    return {
        "kind": "utility-model",
        "universe": list(u.alternatives),
        "preference": list(model.preference.order),
        "benefit": [[x, model.benefit[x]] for x in u],
        "cost": list(model.cost),
        "none_benefit": model.none_benefit,
    }


def dataset_to_dict(ds: ChoiceDataset) -> dict:
    u = ds.universe
    return {
        "kind": "choice-dataset",
        "universe": list(u.alternatives),
        "records": [[list(u.members_of(m)), c] for m, c in ds.records.items()],
        "provenance": ds.provenance,
    }


def space_to_dict(space: FilterSpace) -> dict:
    return {
        "kind": "filter-space",
        "universe": list(space.universe.alternatives),
        "filters": [
            {"label": label, "filter": filter_to_dict(f, with_universe=False)}
            for label, f in zip(space.labels, space.filters)
        ],
    }


def representation_to_dict(rep: ThresholdRepresentation, universe: Universe) -> dict:
    return {
        "kind": "threshold-representation",
        "universe": list(universe.alternatives),
        "u1": [[x, rep.u1[x]] for x in universe],
        "k_star": rep.k_star,
    }


def to_document(obj) -> dict:
    if isinstance(obj, Universe):
        return {"kind": "universe", "alternatives": list(obj.alternatives)}
    if isinstance(obj, Filter):
        return filter_to_dict(obj)
    if isinstance(obj, OrderedFilter):
        return ordered_filter_to_dict(obj)
    if isinstance(obj, FilterUtilityModel):
        return model_to_dict(obj)
    if isinstance(obj, ChoiceDataset):
        return dataset_to_dict(obj)
    if isinstance(obj, FilterSpace):
        return space_to_dict(obj)
    raise ValidationError(f"no document format for {type(obj).__name__}")


def dumps(doc: Any) -> str:
    """Deterministic JSON text (sorted keys, fixed indentation, trailing newline)."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def serialize(obj) -> str:
    return dumps(to_document(obj))


# -- decoding ---------------------------------------------------------------


def _universe(doc: dict, where: str, cap: int) -> Universe:
    alts = _require(doc, "universe", where)
    if not isinstance(alts, list):
        raise ParseError(f"{where}.universe: expected a list")
    try:
        return Universe(tuple(alts), cap=cap)
    except ConsiderationError as e:
        raise ParseError(f"{where}.universe: {e}") from None


def _members(u: Universe, value, where: str) -> tuple:
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected a list of alternatives")
    for x in value:
        if x not in u:
            raise ParseError(f"{where}: {x!r} is not in the universe")
    return tuple(value)


def rule_from_dict(u: Universe, d: dict | None, where: str):
    if d is None:
        return None
    t = _require(d, "type", where)
    try:
        if t == "fixed-set":
            return FixedSet(_members(u, _require(d, "members", where), f"{where}.members"))
        if t == "threshold":
            pairs = _require(d, "scores", where)
            return Threshold({x: float(v) for x, v in pairs}, float(_require(d, "cutoff", where)))
        if t == "top-k":
            return TopK(tuple(_require(d, "order", where)), int(_require(d, "k", where)))
        if t == "satisficing-prefix":
            acc = d.get("acceptable")
            return SatisficingPrefix(
                tuple(_require(d, "listing", where)),
                int(d.get("k", 1)),
                None if acc is None else tuple(acc),
            )
        if t == "explicit-table":
            return ExplicitTable()
    except (TypeError, ValueError) as e:
        raise ParseError(f"{where}: {e}") from None
    raise ParseError(f"{where}.type: unknown rule type {t!r}")


def _filter(u: Universe, d: dict, where: str) -> Filter:
    rule = rule_from_dict(u, d.get("rule"), f"{where}.rule")
    table = d.get("table")
    try:
        if table is None:
            if rule is None or isinstance(rule, ExplicitTable):
                raise ParseError(f"{where}: a filter needs a table or a generating rule")
            return build_filter(u, rule)
        masks = [None] * u.n_menus
        for k, entry in enumerate(table):
            loc = f"{where}.table[{k}]"
            if not isinstance(entry, list) or len(entry) != 2:
                raise ParseError(f"{loc}: expected [menu, image]")
            m = u.mask_of(_members(u, entry[0], f"{loc}[0]"))
            img = u.mask_of(_members(u, entry[1], f"{loc}[1]"))
            if masks[m] is not None:
                raise ParseError(f"{loc}: duplicate entry for menu {u.from_mask(m)!r}")
            masks[m] = img
        missing = [u.from_mask(m) for m, v in enumerate(masks) if v is None]
        if missing:
            raise ParseError(f"{where}.table: no entry for menu {missing[0]!r}")
        f = Filter(u, tuple(masks), rule or ExplicitTable())
        if rule is not None and not isinstance(rule, ExplicitTable):
            if build_filter(u, rule) != f:
                raise ParseError(f"{where}: table does not match its rule")
        return f
    except ParseError:
        raise
    except ConsiderationError as e:
        raise ParseError(f"{where}: {e}") from None


def from_document(doc: Any, source: str = "<input>", cap: int = DEFAULT_UNIVERSE_CAP):
    where = f"{source}: $"
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected a JSON object")
    kind = _require(doc, "kind", where)
    try:
        if kind == "universe":
            alts = _require(doc, "alternatives", where)
            return Universe(tuple(alts), cap=cap)
        u = _universe(doc, where, cap)
        if kind == "filter":
            return _filter(u, doc, where)
        if kind == "ordered-filter":
            rule = _require(doc, "rule", where)
            t = _require(rule, "type", f"{where}.rule")
            if t == "lift":
                return OrderedFilter.lift(_filter(u, _require(rule, "filter", f"{where}.rule"), f"{where}.rule.filter"))
            if t == "keep-first":
                acc = rule.get("acceptable")
                return OrderedFilter.keep_first(u, int(_require(rule, "k", f"{where}.rule")), acc)
            raise ParseError(f"{where}.rule.type: unknown ordered rule {t!r}")
        if kind == "utility-model":
            pref = Preference(u, tuple(_require(doc, "preference", where)))
            benefit = {x: float(v) for x, v in _require(doc, "benefit", where)}
            return FilterUtilityModel(
                benefit, tuple(_require(doc, "cost", where)), pref, float(doc.get("none_benefit", 0.0))
            )
        if kind == "choice-dataset":
            pairs = []
            for k, entry in enumerate(_require(doc, "records", where)):
                loc = f"{where}.records[{k}]"
                if not isinstance(entry, list) or len(entry) != 2:
                    raise ParseError(f"{loc}: expected [menu, choice]")
                pairs.append((_members(u, entry[0], f"{loc}[0]"), entry[1]))
            return ChoiceDataset.from_pairs(u, pairs, doc.get("provenance"))
        if kind == "filter-space":
            filters, labels = [], []
            for k, entry in enumerate(_require(doc, "filters", where)):
                loc = f"{where}.filters[{k}]"
                filters.append(_filter(u, _require(entry, "filter", loc), f"{loc}.filter"))
                labels.append(str(entry.get("label", f"filter-{k}")))
            return FilterSpace(tuple(filters), tuple(labels))
        if kind == "threshold-representation":
            u1 = {x: float(v) for x, v in _require(doc, "u1", where)}
            return ThresholdRepresentation(u1, float(_require(doc, "k_star", where)))
    except ParseError:
        raise
    except (ConsiderationError, TypeError, ValueError, KeyError) as e:
        raise ParseError(f"{where}: {e}") from None
    raise ParseError(f"{where}.kind: unknown kind {kind!r}; expected one of {', '.join(KINDS)}")


def loads(text: str, source: str = "<input>", cap: int = DEFAULT_UNIVERSE_CAP):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{source}: line {e.lineno} column {e.colno}: {e.msg}") from None
    return from_document(doc, source, cap)


def load(path, cap: int = DEFAULT_UNIVERSE_CAP):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror}") from None
    return loads(text, str(path), cap)


def save(obj, path) -> None:
    Path(path).write_text(serialize(obj), encoding="utf-8")


# -- reports ----------------------------------------------------------------


def jsonable(obj: Any) -> Any:
    """Convert reports and domain objects to plain JSON values."""
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, Menu):
        return _menu_list(obj)
    if isinstance(obj, OrderedMenu):
        return list(obj.sequence)
    if isinstance(obj, Preference):
        return list(obj.order)
    if isinstance(obj, Filter):
        return filter_to_dict(obj, with_universe=False)
    if isinstance(obj, Universe):
        return list(obj.alternatives)
    if isinstance(obj, ThresholdRepresentation):
        return {"u1": [[x, v] for x, v in obj.u1.items()], "k_star": obj.k_star}
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
        if hasattr(obj, "holds") and "holds" not in out:
            out["holds"] = obj.holds
        return out
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    raise TypeError(f"cannot convert {type(obj).__name__} to JSON")
