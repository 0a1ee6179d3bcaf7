"""The Collatz map, its odd-compressed form, and memoized stopping counts.

All values are naturals >= 1 held to the unsigned 64-bit range. Python ints
never wrap, so the range is enforced explicitly: any 3v+1 that would not fit
raises :class:`~collatz2.errors.Overflow`.
"""

from __future__ import annotations

import threading

from .errors import BudgetExceeded, NotOdd, Overflow

U64_MAX = (1 << 64) - 1
# largest odd v with 3v+1 <= U64_MAX
ODD_LIMIT = (U64_MAX - 1) // 3

DEFAULT_BUDGET = 10**5


def check_value(v: int) -> int:
    if not isinstance(v, int) or isinstance(v, bool):
        raise TypeError(f"expected int, got {type(v).__name__}")
    if v < 1:
        raise ValueError(f"values start at 1, got {v}")
    if v > U64_MAX:
        raise Overflow(f"{v} exceeds the 64-bit range")
    return v


def triple_plus_one(v: int) -> int:
    if v > ODD_LIMIT:
        raise Overflow(f"3*{v}+1 exceeds the 64-bit range")
    return 3 * v + 1


def f_step(v: int) -> int:
    """One application of the Collatz map."""
    check_value(v)
    if v & 1:
        return triple_plus_one(v)
    return v >> 1


def two_adic_valuation(n: int) -> int:
    """Exponent of the largest power of two dividing ``n`` (n > 0)."""
    return (n & -n).bit_length() - 1


def odd_step(v: int) -> tuple[int, int]:
    """Odd-compressed step: return ``((3v+1) / 2**k, k)`` with k maximal.

    >>> odd_step(7)
    (11, 1)
    >>> odd_step(5)
    (1, 4)
    """
    check_value(v)
    if not v & 1:
        raise NotOdd(f"odd_step needs an odd value, got {v}")
    t = triple_plus_one(v)
    k = two_adic_valuation(t)
    return t >> k, k


def trajectory(start: int, budget: int = DEFAULT_BUDGET) -> list[int]:
    """The f-orbit of ``start`` down to 1, both endpoints included."""
    check_value(start)
    out = [start]
    v = start
    while v != 1:
        if len(out) > budget:
            raise BudgetExceeded(start, budget)
        v = triple_plus_one(v) if v & 1 else v >> 1
        out.append(v)
    return out


class StoppingCache:
    """Append-only map from value to its stopping count s(v).

    Reads are lock-free; insertions are serialized so concurrent readers never
    observe a revised entry. Once ``capacity`` entries are stored, further
    results are computed but not kept.
    """

    def __init__(self, capacity: int | None = None):
        self.capacity = capacity
        self._table: dict[int, int] = {1: 0}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._table)

    def __contains__(self, v: int) -> bool:
        return v in self._table

    def get(self, v: int) -> int | None:
        return self._table.get(v)

    def _insert_path(self, path: list[int], base: int) -> None:
        table = self._table
        with self._lock:
            room = len(path) if self.capacity is None else self.capacity - len(table)
            if room <= 0:
                return
            # path[-1] is the value closest to the known one; keep the cheapest
            # suffix when space is short
            n = len(path)
            for i in range(n - 1, max(n - 1 - room, -1), -1):
                table.setdefault(path[i], base + n - i)


def stopping_steps(v: int, cache: StoppingCache | None = None,
                   budget: int = DEFAULT_BUDGET) -> int:
    """Number of f-applications taking ``v`` to 1, so s(1) = 0 and s(4) = 2."""
    check_value(v)
    if cache is None:
        steps = 0
        while v != 1:
            if steps >= budget:
                raise BudgetExceeded(v, budget)
            v = triple_plus_one(v) if v & 1 else v >> 1
            steps += 1
        return steps

    known = cache.get(v)
    if known is not None:
        return known
    start = v
    path = []
    get = cache._table.get
    while True:
        known = get(v)
        if known is not None:
            break
        if len(path) >= budget:
            raise BudgetExceeded(start, budget)
        path.append(v)
        v = triple_plus_one(v) if v & 1 else v >> 1
    cache._insert_path(path, known)
    return known + len(path)
