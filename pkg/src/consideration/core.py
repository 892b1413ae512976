"""Ground types: universes, menus, filters, preferences and choice data.

Menus are stored as integer bitmasks over a fixed alternative indexing, so
alternative ``universe.alternatives[i]`` corresponds to bit ``1 << i``. All
enumeration orders in the package derive from this encoding.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import CapacityError, DomainMismatchError, ValidationError

DEFAULT_UNIVERSE_CAP = 16

Alternative = Hashable


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in ascending order."""
    members = list(bits(mask))
    for combo in range(1 << len(members)):
        sub = 0
        for j, i in enumerate(members):
            if combo >> j & 1:
                sub |= 1 << i
        yield sub


@dataclass(frozen=True)
class Universe:
    """The finite ground set of alternatives, in a fixed canonical order."""

    alternatives: tuple
    cap: int = field(default=DEFAULT_UNIVERSE_CAP, compare=False, repr=False)

    def __post_init__(self):
        alts = tuple(self.alternatives)
        object.__setattr__(self, "alternatives", alts)
        if len(set(alts)) != len(alts):
            raise ValidationError(f"duplicate alternatives in {alts!r}")
        if len(alts) > self.cap:
            raise CapacityError(
                f"universe has {len(alts)} alternatives, cap is {self.cap}"
            )
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(alts)})

    @classmethod
    def of_size(cls, n: int, cap: int = DEFAULT_UNIVERSE_CAP) -> "Universe":
        """Universe ``{1, ..., n}``."""
        return cls(tuple(range(1, n + 1)), cap=cap)

    def __len__(self) -> int:
        return len(self.alternatives)

    def __iter__(self):
        return iter(self.alternatives)

    def __contains__(self, x) -> bool:
        return x in self._index

    @property
    def size(self) -> int:
        return len(self.alternatives)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.alternatives)) - 1

    @property
    def n_menus(self) -> int:
        return 1 << len(self.alternatives)

    def index(self, x: Alternative) -> int:
        try:
            return self._index[x]
        except (KeyError, TypeError):
            raise DomainMismatchError(f"{x!r} is not an alternative of {self!r}") from None

    def mask_of(self, members: Iterable[Alternative]) -> int:
        mask = 0
        for x in members:
            mask |= 1 << self.index(x)
        return mask

    def menu(self, members: Iterable[Alternative] = ()) -> "Menu":
        return Menu(self, self.mask_of(members))

    def from_mask(self, mask: int) -> "Menu":
        return Menu(self, mask)

    @property
    def full(self) -> "Menu":
        return Menu(self, self.full_mask)

    @property
    def empty(self) -> "Menu":
        return Menu(self, 0)

    def members_of(self, mask: int) -> tuple:
        alts = self.alternatives
        return tuple(alts[i] for i in bits(mask))


def same_universe(a: Universe, b: Universe) -> None:
    if a is not b and a != b:
        raise DomainMismatchError(f"universe mismatch: {a!r} vs {b!r}")


@dataclass(frozen=True)
class Menu:
    """A subset of a universe. Equality is extensional."""

    universe: Universe
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask > self.universe.full_mask:
            raise ValidationError(f"mask {self.mask} outside universe of size {len(self.universe)}")

    @property
    def members(self) -> tuple:
        return self.universe.members_of(self.mask)

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return popcount(self.mask)

    def __bool__(self) -> bool:
        return self.mask != 0

    def __contains__(self, x) -> bool:
        if x not in self.universe:
            return False
        return bool(self.mask >> self.universe.index(x) & 1)

    def _other(self, other: "Menu") -> int:
        same_universe(self.universe, other.universe)
        return other.mask

    def __le__(self, other: "Menu") -> bool:
        return self.mask & ~self._other(other) == 0

    def __ge__(self, other: "Menu") -> bool:
        return other <= self

    def __lt__(self, other: "Menu") -> bool:
        return self <= other and self.mask != other.mask

    def __gt__(self, other: "Menu") -> bool:
        return other < self

    def __and__(self, other: "Menu") -> "Menu":
        return Menu(self.universe, self.mask & self._other(other))

    def __or__(self, other: "Menu") -> "Menu":
        return Menu(self.universe, self.mask | self._other(other))

    def __sub__(self, other: "Menu") -> "Menu":
        return Menu(self.universe, self.mask & ~self._other(other))

    def __repr__(self) -> str:
        return "{" + ", ".join(repr(x) for x in self.members) + "}"


def enumerate_menus(universe: Universe) -> list[Menu]:
    """All ``2**|X|`` menus, ordered by their integer encoding."""
    if len(universe) > universe.cap:
        raise CapacityError(f"universe exceeds cap {universe.cap}")
    return [Menu(universe, m) for m in range(universe.n_menus)]


# -- rule descriptors ------------------------------------------------------
#
# Each rule maps (universe, menu mask) -> consideration mask. ``build_filter``
# evaluates the rule on every menu to produce the extensional table.


@dataclass(frozen=True)
class FixedSet:
    """Consider exactly the members of a fixed set ``Y``: Γ(A) = A ∩ Y."""

    members: tuple

    kind = "fixed-set"

    def validate(self, universe: Universe) -> None:
        for x in self.members:
            if x not in universe:
                raise ValidationError(f"fixed-set member {x!r} not in universe")

    def evaluate(self, universe: Universe, mask: int) -> int:
        return mask & universe.mask_of(self.members)

    def to_dict(self) -> dict:
        return {"type": self.kind, "members": list(self.members)}


@dataclass(frozen=True)
class Threshold:
    """Consider ``x`` iff ``scores[x] >= cutoff``."""

    scores: Mapping[Any, float] = field(hash=False)
    cutoff: float

    kind = "threshold"

    def validate(self, universe: Universe) -> None:
        missing = [x for x in universe if x not in self.scores]
        if missing:
            raise ValidationError(f"threshold scores missing for {missing!r}")
        extra = [x for x in self.scores if x not in universe]
        if extra:
            raise ValidationError(f"threshold scores for unknown alternatives {extra!r}")

    def evaluate(self, universe: Universe, mask: int) -> int:
        out = 0
        for i in bits(mask):
            if self.scores[universe.alternatives[i]] >= self.cutoff:
                out |= 1 << i
        return out

    def to_dict(self) -> dict:
        return {
            "type": self.kind,
            "scores": [[x, self.scores[x]] for x in self.scores],
            "cutoff": self.cutoff,
        }


def _check_permutation(universe: Universe, order: Sequence, what: str) -> None:
    if len(order) != len(universe) or set(order) != set(universe.alternatives):
        raise ValidationError(f"{what} {tuple(order)!r} is not a permutation of the universe")


@dataclass(frozen=True)
class TopK:
    """Keep the ``k`` best members of the menu under a fixed order (best first)."""

    order: tuple
    k: int

    kind = "top-k"

    def validate(self, universe: Universe) -> None:
        _check_permutation(universe, self.order, "top-k order")
        if self.k < 0:
            raise ValidationError("top-k needs k >= 0")

    def evaluate(self, universe: Universe, mask: int) -> int:
        out, kept = 0, 0
        for x in self.order:
            if kept >= self.k:
                break
            bit = 1 << universe.index(x)
            if mask & bit:
                out |= bit
                kept += 1
        return out

    def to_dict(self) -> dict:
        return {"type": self.kind, "order": list(self.order), "k": self.k}


@dataclass(frozen=True)
class SatisficingPrefix:
    """Scan the menu in listing order; keep the first ``k`` acceptable members.

    ``acceptable=None`` treats every alternative as acceptable.
    """

    listing: tuple
    k: int = 1
    acceptable: tuple | None = None

    kind = "satisficing-prefix"

    def validate(self, universe: Universe) -> None:
        _check_permutation(universe, self.listing, "satisficing listing")
        if self.k < 0:
            raise ValidationError("satisficing-prefix needs k >= 0")
        for x in self.acceptable or ():
            if x not in universe:
                raise ValidationError(f"acceptable alternative {x!r} not in universe")

    def evaluate(self, universe: Universe, mask: int) -> int:
        ok = None if self.acceptable is None else set(self.acceptable)
        out, kept = 0, 0
        for x in self.listing:
            if kept >= self.k:
                break
            bit = 1 << universe.index(x)
            if mask & bit and (ok is None or x in ok):
                out |= bit
                kept += 1
        return out

    def to_dict(self) -> dict:
        d = {"type": self.kind, "listing": list(self.listing), "k": self.k}
        if self.acceptable is not None:
            d["acceptable"] = list(self.acceptable)
        return d


@dataclass(frozen=True)
class ExplicitTable:
    """Provenance marker for filters given directly as a table."""

    kind = "explicit-table"

    def validate(self, universe: Universe) -> None:
        pass

    def to_dict(self) -> dict:
        return {"type": self.kind}


Rule = FixedSet | Threshold | TopK | SatisficingPrefix | ExplicitTable


@dataclass(frozen=True, eq=False)
class Filter:
    """A total, contractive map from menus to sub-menus.

    ``table[m]`` is the consideration mask of the menu with mask ``m``.
    Equality and hashing look at the table only, not the provenance.
    """

    universe: Universe
    table: tuple
    rule: Rule | None = None

    def __post_init__(self):
        table = tuple(int(t) for t in self.table)
        object.__setattr__(self, "table", table)
        if len(table) != self.universe.n_menus:
            raise ValidationError(
                f"filter table has {len(table)} entries, expected {self.universe.n_menus}"
            )
        for m, img in enumerate(table):
            if img & ~m:
                raise ValidationError(
                    f"filter is not contractive at {self.universe.from_mask(m)!r}: "
                    f"image {self.universe.from_mask(img & self.universe.full_mask)!r}"
                )

    def __call__(self, menu: Menu) -> Menu:
        return apply_filter(self, menu)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Filter):
            return NotImplemented
        return self.universe == other.universe and self.table == other.table

    def __hash__(self) -> int:
        return hash((self.universe, self.table))

    def __repr__(self) -> str:
        how = self.rule.kind if self.rule is not None else "table"
        return f"Filter<{how}>({len(self.universe)} alternatives)"

    @property
    def considered(self) -> Menu:
        """Γ(X), the consideration set of the full menu."""
        return self.universe.from_mask(self.table[-1])

    def items(self) -> Iterator[tuple[Menu, Menu]]:
        u = self.universe
        for m, img in enumerate(self.table):
            yield Menu(u, m), Menu(u, img)

    @classmethod
    def from_mapping(cls, universe: Universe, mapping: Callable[[Menu], Iterable] | Mapping) -> "Filter":
        """Build from a callable or a dict keyed by menus; missing dict keys map to ∅."""
        table = []
        for m in range(universe.n_menus):
            menu = Menu(universe, m)
            if callable(mapping):
                img = mapping(menu)
            else:
                img = mapping.get(menu, ())
            img_mask = img.mask if isinstance(img, Menu) else universe.mask_of(img)
            table.append(img_mask)
        return cls(universe, tuple(table), ExplicitTable())


def apply_filter(filter: Filter, menu: Menu) -> Menu:
    same_universe(filter.universe, menu.universe)
    return Menu(menu.universe, filter.table[menu.mask])


def build_filter(universe: Universe, rule: Rule) -> Filter:
    """Materialise a rule-backed filter over every menu of ``universe``."""
    rule.validate(universe)
    if isinstance(rule, ExplicitTable):
        raise ValidationError("an explicit-table rule carries no table; use Filter(...) directly")
    table = tuple(rule.evaluate(universe, m) for m in range(universe.n_menus))
    return Filter(universe, table, rule)


def identity_filter(universe: Universe) -> Filter:
    return build_filter(universe, FixedSet(universe.alternatives))


def empty_filter(universe: Universe) -> Filter:
    return build_filter(universe, FixedSet(()))


def fixed_set_filter(universe: Universe, members: Iterable) -> Filter:
    return build_filter(universe, FixedSet(tuple(members)))


# -- ordered menus and ordered filters -------------------------------------


@dataclass(frozen=True)
class OrderedMenu:
    """A duplicate-free listing of alternatives from one universe."""

    universe: Universe
    sequence: tuple

    def __post_init__(self):
        seq = tuple(self.sequence)
        object.__setattr__(self, "sequence", seq)
        if len(set(seq)) != len(seq):
            raise ValidationError(f"ordered menu {seq!r} repeats an alternative")
        for x in seq:
            self.universe.index(x)

    @property
    def menu(self) -> Menu:
        return self.universe.menu(self.sequence)

    def __len__(self) -> int:
        return len(self.sequence)

    def __repr__(self) -> str:
        return "(" + ", ".join(repr(x) for x in self.sequence) + ")"


@dataclass(frozen=True, eq=False)
class OrderedFilter:
    """Consideration that can see the order in which a menu is presented.

    ``rule`` takes the listing (a tuple) and returns the considered members.
    ``descriptor`` is a serialisable description of the rule, when known.
    """

    universe: Universe
    rule: Callable[[tuple], Iterable]
    descriptor: dict | None = None

    def __call__(self, ordered: OrderedMenu) -> Menu:
        same_universe(self.universe, ordered.universe)
        out = self.universe.menu(self.rule(ordered.sequence))
        if not out <= ordered.menu:
            raise ValidationError(f"ordered filter is not contractive at {ordered!r}")
        return out

    @classmethod
    def lift(cls, filter: Filter) -> "OrderedFilter":
        """Order-insensitive lift: the listing is forgotten before filtering."""
        u = filter.universe

        def rule(seq):
            return u.members_of(filter.table[u.mask_of(seq)])

        return cls(u, rule, {"type": "lift", "filter": filter})

    @classmethod
    def keep_first(cls, universe: Universe, k: int, acceptable: Iterable | None = None) -> "OrderedFilter":
        """Keep the first ``k`` (acceptable) alternatives in presentation order."""
        if k < 0:
            raise ValidationError("keep-first needs k >= 0")
        ok = None if acceptable is None else frozenset(acceptable)
        if ok is not None:
            for x in ok:
                universe.index(x)

        def rule(seq):
            picked = [x for x in seq if ok is None or x in ok]
            return picked[:k]

        desc = {"type": "keep-first", "k": k}
        if ok is not None:
            desc["acceptable"] = [x for x in universe if x in ok]
        return cls(universe, rule, desc)


# -- preferences and choice ------------------------------------------------


@dataclass(frozen=True)
class Preference:
    """A strict total order over the universe, best first."""

    universe: Universe
    order: tuple

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        _check_permutation(self.universe, self.order, "preference")
        object.__setattr__(self, "_rank", {x: r for r, x in enumerate(self.order)})

    def rank(self, x) -> int:
        """0 for the best alternative."""
        return self._rank[x]

    def prefers(self, x, y) -> bool:
        return self._rank[x] < self._rank[y]


def choose(preference: Preference, menu: Menu):
    """The most preferred member of ``menu``; ``None`` for the empty menu."""
    same_universe(preference.universe, menu.universe)
    for x in preference.order:
        if x in menu:
            return x
    return None


def all_preferences(universe: Universe) -> Iterator[Preference]:
    """Every strict total order, in lexicographic permutation order."""
    for perm in itertools.permutations(universe.alternatives):
        yield Preference(universe, perm)


@dataclass(frozen=True, eq=False)
class ChoiceDataset:
    """Observed choices: at most one record per menu, ``None`` for no choice.

    ``records`` maps menu masks to the chosen alternative (or ``None``).
    ``provenance`` optionally describes the generating model.
    """

    universe: Universe
    records: Mapping[int, Any]
    provenance: dict | None = None

    def __post_init__(self):
        recs = dict(sorted((int(m), c) for m, c in self.records.items()))
        object.__setattr__(self, "records", recs)
        u = self.universe
        for m, c in recs.items():
            if m < 0 or m > u.full_mask:
                raise ValidationError(f"record for invalid menu mask {m}")
            if c is not None and (c not in u or not m >> u.index(c) & 1):
                raise ValidationError(
                    f"recorded choice {c!r} is not a member of menu {u.from_mask(m)!r}"
                )

    @classmethod
    def from_pairs(cls, universe: Universe, pairs: Iterable[tuple[Iterable, Any]], provenance=None):
        records: dict[int, Any] = {}
        for members, choice in pairs:
            m = universe.mask_of(members)
            if m in records:
                raise ValidationError(f"duplicate record for menu {universe.from_mask(m)!r}")
            records[m] = choice
        return cls(universe, records, provenance)

    def __len__(self) -> int:
        return len(self.records)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChoiceDataset):
            return NotImplemented
        return (
            self.universe == other.universe
            and self.records == other.records
            and self.provenance == other.provenance
        )

    def __contains__(self, menu: Menu) -> bool:
        return menu.mask in self.records

    def choice(self, menu: Menu):
        """Recorded choice; raises ``KeyError`` for an unrecorded menu."""
        same_universe(self.universe, menu.universe)
        return self.records[menu.mask]

    def items(self) -> Iterator[tuple[Menu, Any]]:
        u = self.universe
        for m, c in self.records.items():
            yield Menu(u, m), c

    @property
    def is_full_domain(self) -> bool:
        """Every nonempty menu has a record."""
        return all(m in self.records for m in range(1, self.universe.n_menus))


def check_choice_membership(dataset: ChoiceDataset, filter: Filter) -> list[Menu]:
    """Menus whose recorded choice lies outside their consideration set.

    ``None`` records are never violations.
    """
    same_universe(dataset.universe, filter.universe)
    u = dataset.universe
    bad = []
    for m, c in dataset.records.items():
        if c is None:
            continue
        if not filter.table[m] >> u.index(c) & 1:
            bad.append(Menu(u, m))
    return bad
