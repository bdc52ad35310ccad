"""Dyadic intervals of [0, 1] and the combinatorics of finite interval sets.

An interval ``(level, index)`` stands for ``[index * 2**-level, (index+1) * 2**-level)``.
The extra element :data:`ROOT` stands for ``[0, 2]``; it strictly contains every
other interval and indexes the constant function ``1_[0,1]`` in the Haar system.
Its only child inside ``[0, 1]`` is ``(0, 0)``.

Sets of intervals are :class:`IntervalSet` values whose iteration order is
canonical (level ascending, then index ascending, root first).
"""

from __future__ import annotations

import enum
import os
from collections.abc import Iterable, Iterator, Set
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    EmptySetError,
    MembershipError,
    NotComparable,
    ResolutionOverflow,
    SchemaError,
)

DEFAULT_MAX_LEVEL = 16
MAX_LEVEL_ENV = "HAARLAB_MAX_LEVEL"


def max_level() -> int:
    """Configured maximum level; ``HAARLAB_MAX_LEVEL`` overrides the default 16."""
    raw = os.environ.get(MAX_LEVEL_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_LEVEL
    try:
        value = int(raw)
    except ValueError:
        raise SchemaError(f"{MAX_LEVEL_ENV} must be an integer, got {raw!r}") from None
    if value < 0:
        raise SchemaError(f"{MAX_LEVEL_ENV} must be nonnegative, got {value}")
    return value


def check_level(level: int, limit: int | None = None) -> None:
    limit = max_level() if limit is None else limit
    if level > limit:
        raise ResolutionOverflow(
            f"level {level} exceeds the maximum level {limit}",
            {"level": level, "max_level": limit},
        )


@dataclass(frozen=True, order=True)
class DyadicInterval:
    """A node of the dyadic tree; ``level == -1`` is reserved for :data:`ROOT`."""

    level: int
    index: int

    def __post_init__(self):
        if self.level == -1:
            if self.index != 0:
                raise ValueError("the root interval has index 0")
            return
        if self.level < 0:
            raise ValueError(f"negative level {self.level}")
        if not 0 <= self.index < (1 << self.level):
            raise ValueError(f"index {self.index} out of range for level {self.level}")

    @property
    def is_root(self) -> bool:
        return self.level == -1

    @property
    def measure(self) -> Fraction:
        if self.is_root:
            return Fraction(2)
        return Fraction(1, 1 << self.level)

    @property
    def start(self) -> Fraction:
        if self.is_root:
            return Fraction(0)
        return Fraction(self.index, 1 << self.level)

    @property
    def end(self) -> Fraction:
        if self.is_root:
            return Fraction(2)
        return Fraction(self.index + 1, 1 << self.level)

    @property
    def left(self) -> DyadicInterval:
        if self.is_root:
            return DyadicInterval(0, 0)
        return DyadicInterval(self.level + 1, 2 * self.index)

    @property
    def right(self) -> DyadicInterval | None:
        """Right half; ``None`` for the root, whose right half ``[1, 2]`` carries no mass."""
        if self.is_root:
            return None
        return DyadicInterval(self.level + 1, 2 * self.index + 1)

    @property
    def parent(self) -> DyadicInterval | None:
        if self.is_root:
            return None
        if self.level == 0:
            return ROOT
        return DyadicInterval(self.level - 1, self.index >> 1)

    @property
    def is_left_child(self) -> bool:
        return not self.is_root and (self.level == 0 or self.index % 2 == 0)

    def contains(self, other: DyadicInterval) -> bool:
        """``other ⊆ self``."""
        if self.is_root:
            return True
        if other.is_root or other.level < self.level:
            return False
        return other.index >> (other.level - self.level) == self.index

    def cell_range(self, resolution: int) -> tuple[int, int]:
        """Half-open range of resolution-``resolution`` cells covered by ``self``.

        The root covers all of ``[0, 1]``.  Requires ``level <= resolution``.
        """
        if self.is_root:
            return 0, 1 << resolution
        shift = resolution - self.level
        if shift < 0:
            raise ValueError(f"{self} is finer than resolution {resolution}")
        return self.index << shift, (self.index + 1) << shift

    @property
    def heap_index(self) -> int:
        """Position in the flat coefficient layout: root 0, then ``2**level + index``."""
        if self.is_root:
            return 0
        return (1 << self.level) + self.index

    @classmethod
    def from_heap_index(cls, position: int) -> DyadicInterval:
        if position == 0:
            return ROOT
        level = position.bit_length() - 1
        return cls(level, position - (1 << level))

    @classmethod
    def parse(cls, text: str) -> DyadicInterval:
        """Parse ``"root"`` or ``"level/index"``."""
        text = text.strip()
        if text == "root":
            return ROOT
        try:
            level_s, index_s = text.split("/")
            interval = cls(int(level_s), int(index_s))
        except ValueError:
            raise SchemaError(f"invalid interval {text!r}; expected 'root' or 'level/index'") from None
        if interval.is_root:
            raise SchemaError(f"invalid interval {text!r}")
        return interval

    def __str__(self) -> str:
        return "root" if self.is_root else f"{self.level}/{self.index}"

    def __repr__(self) -> str:
        return "ROOT" if self.is_root else f"DyadicInterval({self.level}, {self.index})"


ROOT = DyadicInterval(-1, 0)


class Relation(enum.Enum):
    EQUAL = "equal"
    SUBSET = "strict-subset"
    SUPERSET = "strict-superset"
    DISJOINT = "disjoint"


def relation(first: DyadicInterval, second: DyadicInterval) -> Relation:
    """How ``first`` sits relative to ``second`` under inclusion."""
    if first == second:
        return Relation.EQUAL
    if second.contains(first):
        return Relation.SUBSET
    if first.contains(second):
        return Relation.SUPERSET
    return Relation.DISJOINT


def halves(interval: DyadicInterval, limit: int | None = None) -> tuple[DyadicInterval, DyadicInterval | None]:
    """``(left, right)`` halves; the root yields ``((0, 0), None)``."""
    check_level(interval.level + 1, limit)
    return interval.left, interval.right


def predecessors(interval: DyadicInterval) -> list[DyadicInterval]:
    """All strict supersets, innermost first, ending at the root."""
    out = []
    node = interval.parent
    while node is not None:
        out.append(node)
        node = node.parent
    return out


def segment(lower: DyadicInterval, upper: DyadicInterval) -> list[DyadicInterval]:
    """Chain ``[lower, upper]`` ordered by increasing measure."""
    if not upper.contains(lower):
        raise NotComparable(f"{lower} is not contained in {upper}", {"lower": str(lower), "upper": str(upper)})
    chain = [lower]
    node = lower
    while node != upper:
        node = node.parent
        chain.append(node)
    return chain


class IntervalSet(Set):
    """Immutable finite set of dyadic intervals with canonical iteration order."""

    __slots__ = ("_items", "_order")

    def __init__(self, items: Iterable[DyadicInterval] = ()):
        self._items = frozenset(items)
        self._order: tuple[DyadicInterval, ...] | None = None

    @classmethod
    def _from_iterable(cls, it):
        return cls(it)

    def __contains__(self, item) -> bool:
        return item in self._items

    def __iter__(self) -> Iterator[DyadicInterval]:
        if self._order is None:
            self._order = tuple(sorted(self._items))
        return iter(self._order)

    def __len__(self) -> int:
        return len(self._items)

    def __hash__(self) -> int:
        return hash(self._items)

    def __repr__(self) -> str:
        return "IntervalSet({" + ", ".join(str(i) for i in self) + "})"

    def minimal(self) -> IntervalSet:
        """Elements with no strict subset inside the set."""
        return IntervalSet(i for i in self._items if not any(j != i and i.contains(j) for j in self._items))

    def maximal(self) -> IntervalSet:
        return IntervalSet(i for i in self._items if not any(j != i and j.contains(i) for j in self._items))

    def strictly_below(self, interval: DyadicInterval) -> IntervalSet:
        """Members that are strict subsets of ``interval``."""
        return IntervalSet(j for j in self._items if j != interval and interval.contains(j))


def derived_set(intervals: Iterable[DyadicInterval]) -> IntervalSet:
    """Drop the minimal elements."""
    s = intervals if isinstance(intervals, IntervalSet) else IntervalSet(intervals)
    return s - s.minimal()


def _derivation_layers(s: IntervalSet) -> list[IntervalSet]:
    layers = []
    while s:
        layers.append(s)
        s = derived_set(s)
    return layers


def set_order(intervals: Iterable[DyadicInterval]) -> int:
    s = IntervalSet(intervals)
    if not s:
        raise EmptySetError("the order of the empty set is undefined")
    return len(_derivation_layers(s)) - 1


def order_in_set(interval: DyadicInterval, intervals: Iterable[DyadicInterval]) -> int:
    """The ``m`` with ``interval`` in the m-th derived set but not the (m+1)-th."""
    s = IntervalSet(intervals)
    if interval not in s:
        raise MembershipError(f"{interval} is not in the set", {"interval": str(interval)})
    layers = _derivation_layers(s)
    m = 0
    while m + 1 < len(layers) and interval in layers[m + 1]:
        m += 1
    return m


def branching_partition(intervals: Iterable[DyadicInterval]) -> tuple[IntervalSet, IntervalSet, IntervalSet]:
    """Split a set by how many maximal members lie strictly below each element.

    Returns ``(leaves, single, branching)``: no member below, exactly one maximal
    member below, at least two maximal members below.
    """
    s = IntervalSet(intervals)
    leaves, single, branching = [], [], []
    for interval in s:
        below = s.strictly_below(interval)
        if not below:
            leaves.append(interval)
        elif len(below.maximal()) == 1:
            single.append(interval)
        else:
            branching.append(interval)
    return IntervalSet(leaves), IntervalSet(single), IntervalSet(branching)


def all_intervals(depth: int, include_root: bool = True) -> IntervalSet:
    """Every interval of level ``< depth``, optionally with the root."""
    items = [DyadicInterval(n, k) for n in range(depth) for k in range(1 << n)]
    if include_root:
        items.append(ROOT)
    return IntervalSet(items)
