"""Colored parameter sets, partition triples and cardinality profiles."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Mapping

from .algebra import AlgebraSpec
from .scalars import Rat, rat, rat_str, theta


class InfeasibleProfile(ValueError):
    """Requested partition cardinalities exceed the available set sizes."""


class ParamSet(tuple):
    """Sorted tuple of pairwise distinct rationals."""

    def __new__(cls, values: Iterable = ()):
        vals = sorted(rat(v) for v in values)
        for a, b in zip(vals, vals[1:]):
            if a == b:
                raise ValueError(f"parameter {rat_str(a)} repeated within one color")
        return super().__new__(cls, vals)

    @property
    def elements(self) -> tuple:
        return tuple(self)


_EMPTY = ParamSet()


class ColoredSets:
    """The collection {t^s}; colors outside the legal range read as empty."""

    __slots__ = ("algebra", "_sets", "_key")

    def __init__(self, algebra: AlgebraSpec, sets: Mapping[int, Iterable] | None = None):
        self.algebra = algebra
        data: dict[int, ParamSet] = {}
        for s, vals in (sets or {}).items():
            if not algebra.has_color(s):
                raise ValueError(f"color {s} is not legal for {algebra.label()}")
            ps = vals if isinstance(vals, ParamSet) else ParamSet(vals)
            if ps:
                data[s] = ps
        self._sets = data
        self._key = tuple((s, tuple(data[s])) for s in sorted(data))

    def get(self, s: int) -> ParamSet:
        return self._sets.get(s, _EMPTY)

    __getitem__ = get

    def key(self) -> tuple:
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, ColoredSets) and self.algebra == other.algebra and self._key == other._key

    def __hash__(self) -> int:
        return hash((self.algebra, self._key))

    def cardinalities(self) -> dict[int, int]:
        return {s: len(self.get(s)) for s in self.algebra.colors}

    @property
    def total(self) -> int:
        return sum(len(v) for v in self._sets.values())

    def is_empty(self) -> bool:
        return not self._sets

    def with_added(self, s: int, value) -> "ColoredSets":
        data = dict(self._sets)
        data[s] = ParamSet(tuple(self.get(s)) + (rat(value),))
        return ColoredSets(self.algebra, data)

    def without(self, s: int, value) -> "ColoredSets":
        value = rat(value)
        cur = self.get(s)
        if value not in cur:
            raise KeyError(f"{rat_str(value)} not in color {s}")
        data = dict(self._sets)
        data[s] = ParamSet(v for v in cur if v != value)
        return ColoredSets(self.algebra, data)

    def replace(self, s: int, values: Iterable) -> "ColoredSets":
        data = dict(self._sets)
        data[s] = ParamSet(values)
        return ColoredSets(self.algebra, data)

    def all_values(self) -> list:
        return [v for s in sorted(self._sets) for v in self._sets[s]]

    def to_json(self) -> dict:
        return {str(s): [rat_str(v) for v in self._sets[s]] for s in sorted(self._sets)}

    def __repr__(self) -> str:
        body = "; ".join(f"{s}:[{', '.join(rat_str(v) for v in vals)}]" for s, vals in self._key)
        return f"ColoredSets({self.algebra.label()}, {body})"


class PartView:
    """Read-only view of one or several parts of a PartitionTriple."""

    __slots__ = ("_triple", "_parts")

    def __init__(self, triple: "PartitionTriple", parts: tuple[int, ...]):
        self._triple = triple
        self._parts = parts

    def get(self, s: int) -> tuple:
        entry = self._triple.parts.get(s)
        if entry is None:
            # colors that are not partitioned sit entirely in part II
            return tuple(self._triple.base.get(s)) if 1 in self._parts else ()
        if len(self._parts) == 1:
            return entry[self._parts[0]]
        out: tuple = ()
        for p in self._parts:
            out += entry[p]
        return out


class PartitionTriple:
    """Per color a split of t^s into disjoint parts (I, II, III)."""

    __slots__ = ("base", "parts", "I", "II", "III", "I_II", "II_III", "_rest")

    def __init__(self, base: ColoredSets, parts: Mapping[int, tuple[tuple, tuple, tuple]]):
        self.base = base
        self.parts = dict(parts)
        self.I = PartView(self, (0,))
        self.II = PartView(self, (1,))
        self.III = PartView(self, (2,))
        self.I_II = PartView(self, (0, 1))
        self.II_III = PartView(self, (1, 2))
        self._rest = None

    def rest(self) -> ColoredSets:
        """The collection t_II, which feeds the Bethe vector of a term."""
        if self._rest is None:
            data = {s: self.II.get(s) for s in self.base.algebra.colors}
            self._rest = ColoredSets(self.base.algebra, {s: ParamSet(v) for s, v in data.items()})
        return self._rest

    def check(self) -> None:
        for s, (a, b, d) in self.parts.items():
            full = set(self.base.get(s))
            pieces = list(a) + list(b) + list(d)
            if len(pieces) != len(set(pieces)) or set(pieces) != full:
                raise AssertionError(f"color {s}: parts do not split the set")


@dataclass(frozen=True)
class CardinalityProfile:
    """Required (|t^s_I|, |t^s_III|) per color."""

    required: tuple[tuple[int, int, int], ...]  # (color, n_I, n_III)
    feasible: bool

    def as_dict(self) -> dict[int, tuple[int, int]]:
        return {s: (a, b) for s, a, b in self.required}


def _make_profile(tbar: ColoredSets, req: dict[int, tuple[int, int]]) -> CardinalityProfile:
    feasible = all(a + b <= len(tbar.get(s)) for s, (a, b) in req.items())
    return CardinalityProfile(tuple((s, a, b) for s, (a, b) in sorted(req.items())), feasible)


def profile_from(tbar: ColoredSets, req: Mapping[int, tuple[int, int]]) -> CardinalityProfile:
    return _make_profile(tbar, {s: v for s, v in req.items() if v != (0, 0)})


def cardinality_profile(algebra: AlgebraSpec, l: int, k: int, i: int, j: int, tbar: ColoredSets) -> CardinalityProfile:
    """Cardinalities of the rectangular recurrence partition sum."""
    if algebra.is_gl:
        if not (1 <= i <= l < k <= j <= algebra.n):
            raise IndexError(f"need 1<=i<=l<k<=j<=n, got i={i} l={l} k={k} j={j}")
        req = {}
        for s in algebra.colors:
            a = theta(s - i) if s < l else 0
            b = theta(j - s - 1) if s > k - 1 else 0
            req[s] = (a, b)
    else:
        n = algebra.n
        if not (-n <= i <= l < k <= j <= n):
            raise IndexError(f"need -n<=i<=l<k<=j<=n, got i={i} l={l} k={k} j={j}")
        req = {}
        for s in algebra.colors:
            if s < abs(l):
                a = theta(l) * (theta(s - i) + theta(-i - s - 1))
            else:
                a = theta(-i - s - 1)
            if s < abs(k):
                b = theta(-k) * (theta(j + s) + theta(j - s - 1))
            else:
                b = theta(j - s - 1)
            req[s] = (a, b)
    return profile_from(tbar, req)


def enumerate_partitions(tbar: ColoredSets, profile: CardinalityProfile) -> Iterator[PartitionTriple]:
    """All partitions with the required cardinalities, in a fixed order."""
    if not profile.feasible:
        raise InfeasibleProfile(f"profile {profile.required} exceeds {tbar!r}")
    per_color = []
    for s, a, b in profile.required:
        vals = tuple(tbar.get(s))
        options = []
        for pick_i in combinations(range(len(vals)), a):
            left = [p for p in range(len(vals)) if p not in pick_i]
            for pick_iii in combinations(left, b):
                part_i = tuple(vals[p] for p in pick_i)
                part_iii = tuple(vals[p] for p in pick_iii)
                part_ii = tuple(vals[p] for p in left if p not in pick_iii)
                options.append((s, (part_i, part_ii, part_iii)))
        per_color.append(options)
    for combo in product(*per_color):
        yield PartitionTriple(tbar, dict(combo))
