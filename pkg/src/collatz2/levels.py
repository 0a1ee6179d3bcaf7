"""Level decomposition of the naturals under a global no-repeat rule.

For x = 1, 2, ..., N: if x was already visited its level is empty;
otherwise the orbit of x is appended until it reaches 1 or its next value
was visited before. That next value is kept as ``exit_value`` but is not
part of the level.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .core import DEFAULT_BUDGET, ODD_LIMIT, StoppingCache, check_value, stopping_steps
from .errors import BudgetExceeded, NotRetained, Overflow, OutOfRange


class SeenSet:
    """Exact integer set: a bitmap for 1..dense_cap, a hash set above it."""

    def __init__(self, dense_cap: int, values: Iterable[int] = ()):
        if dense_cap < 1:
            raise ValueError("dense_cap must be >= 1")
        self.dense_cap = dense_cap
        self.dense = bytearray((dense_cap >> 3) + 1)
        self.sparse: set[int] = set()
        self._dense_count = 0
        for v in values:
            self.add(v)

    def __contains__(self, v: int) -> bool:
        if v <= self.dense_cap:
            return bool(self.dense[v >> 3] & (1 << (v & 7)))
        return v in self.sparse

    def add(self, v: int) -> None:
        if v <= self.dense_cap:
            mask = 1 << (v & 7)
            if not self.dense[v >> 3] & mask:
                self.dense[v >> 3] |= mask
                self._dense_count += 1
        else:
            self.sparse.add(v)

    def __len__(self) -> int:
        return self._dense_count + len(self.sparse)


@dataclass(frozen=True)
class LevelRecord:
    starter: int
    e: int
    level_max: int | None = None
    ender: int | None = None
    exit_value: int | None = None
    first_index: int | None = None


class Query(NamedTuple):
    touch: int
    level: int
    s: int
    e: int
    max_of_level: int


def _zeros(n: int) -> array:
    return array("Q", bytes(8 * n))


class LevelTable:
    """A completed decomposition for starters 1..bound.

    Per-x arrays are indexed by x (slot 0 unused); 0 encodes an absent
    optional field since every real value is >= 1. ``level_max``, ``ender``
    and ``exit_value`` are per-starter and 0 when the level is empty.
    """

    def __init__(self, bound: int, e: array, level_of: array, visit_index: array,
                 level_max: array, ender: array, exit_value: array,
                 elements: dict[int, list[int]] | None = None,
                 seen: SeenSet | None = None, steps: array | None = None,
                 budget: int = DEFAULT_BUDGET):
        self.bound = bound
        self.e = e
        self.level_of = level_of
        self.visit_index = visit_index
        self.level_max = level_max
        self.ender = ender
        self.exit_value = exit_value
        self.elements = elements
        self.seen = seen
        self.budget = budget
        self.cache = StoppingCache()
        self._steps = steps

        cum_e = _zeros(bound + 1)
        maximal = _zeros(bound + 1)
        total = best = 0
        for x in range(1, bound + 1):
            total += e[x]
            if level_max[x] > best:
                best = level_max[x]
            cum_e[x] = total
            maximal[x] = best
        self.cum_e = cum_e
        self.maximal_prefix = maximal

    @property
    def retained(self) -> bool:
        return self.elements is not None

    def _check(self, x: int) -> int:
        check_value(x)
        if x > self.bound:
            raise OutOfRange(f"{x} is above the table bound {self.bound}")
        return x

    def record(self, x: int) -> LevelRecord:
        self._check(x)
        if not self.e[x]:
            return LevelRecord(x, 0)
        return LevelRecord(
            starter=x,
            e=self.e[x],
            level_max=self.level_max[x],
            ender=self.ender[x],
            exit_value=self.exit_value[x] or None,
            first_index=self.visit_index[x],
        )

    @property
    def records(self) -> list[LevelRecord]:
        return [self.record(x) for x in range(1, self.bound + 1)]

    def steps(self, v: int) -> int:
        """s(v); precomputed for x <= bound when the table was imported."""
        if self._steps is not None and v <= self.bound:
            return self._steps[v]
        return stopping_steps(v, self.cache, self.budget)


def build_levels(n: int, dense_cap: int | None = None, budget: int = DEFAULT_BUDGET,
                 retain_elements: bool = False) -> LevelTable:
    """Construct the levels of starters 1..n in order.

    ``budget`` caps the element count of any single level.
    """
    check_value(n)
    if dense_cap is None:
        dense_cap = 8 * n
    seen = SeenSet(dense_cap)
    bits = seen.dense
    sparse = seen.sparse

    e = _zeros(n + 1)
    level_of = _zeros(n + 1)
    visit_index = _zeros(n + 1)
    level_max = _zeros(n + 1)
    ender = _zeros(n + 1)
    exit_value = _zeros(n + 1)
    elements: dict[int, list[int]] | None = {} if retain_elements else None

    counter = 0
    dense_count = 0
    for x in range(1, n + 1):
        if x <= dense_cap:
            if bits[x >> 3] & (1 << (x & 7)):
                continue
        elif x in sparse:
            continue
        v = x
        count = 0
        top = x
        exit_to = 0
        kept = [] if elements is not None else None
        while True:
            if v <= dense_cap:
                bits[v >> 3] |= 1 << (v & 7)
                dense_count += 1
            else:
                sparse.add(v)
            if v <= n:
                visit_index[v] = counter
                level_of[v] = x
            if kept is not None:
                kept.append(v)
            counter += 1
            count += 1
            if v > top:
                top = v
            if v == 1:
                break
            if v & 1:
                if v > ODD_LIMIT:
                    raise Overflow(f"3*{v}+1 exceeds the 64-bit range")
                w = 3 * v + 1
            else:
                w = v >> 1
            if w <= dense_cap:
                if bits[w >> 3] & (1 << (w & 7)):
                    exit_to = w
                    break
            elif w in sparse:
                exit_to = w
                break
            if count >= budget:
                raise BudgetExceeded(x, budget)
            v = w
        e[x] = count
        level_max[x] = top
        ender[x] = v
        exit_value[x] = exit_to
        if kept is not None:
            elements[x] = kept
    seen._dense_count = dense_count

    return LevelTable(n, e, level_of, visit_index, level_max, ender, exit_value,
                      elements=elements, seen=seen, budget=budget)


def query(table: LevelTable, x: int) -> Query:
    """touch, level, s, e and the maximum of x's level."""
    table._check(x)
    lv = table.level_of[x]
    return Query(
        touch=table.visit_index[x],
        level=lv,
        s=table.steps(x),
        e=table.e[x],
        max_of_level=table.level_max[lv],
    )


def maximal_of(table: LevelTable, n: int) -> int:
    """Largest element over all non-empty levels with starter <= n."""
    table._check(n)
    return table.maximal_prefix[n]


def level_elements(table: LevelTable, x: int) -> list[int]:
    table._check(x)
    if table.elements is None:
        raise NotRetained("table was built without retain_elements")
    return list(table.elements.get(x, ()))
