"""Odd-compressed levels, built two ways.

The filtered route drops even values from retained level element lists. The
direct route advances with :func:`~collatz2.core.odd_step` and replays the
even intermediates only to test them against its own seen set. A level may
stop partway through a halving run, so the replay is what keeps the routes
exactly equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import DEFAULT_BUDGET, check_value, odd_step
from .errors import BudgetExceeded
from .levels import LevelTable, SeenSet, level_elements


@dataclass
class OddLevelRecord:
    """One odd-compressed level.

    ``k_list[i]`` is the full 2-adic exponent of ``3*odds[i]+1`` for every odd
    whose successor stayed in the level. ``halvings[i]`` counts the even
    elements the level actually holds after ``odds[i]``, and
    ``lead_halvings`` the even elements ahead of the first odd.
    """

    starter: int
    odds: list[int] = field(default_factory=list)
    k_list: list[int] = field(default_factory=list)
    halvings: list[int] = field(default_factory=list)
    lead_halvings: int = 0
    exit_value: int | None = None

    @property
    def parent_e(self) -> int:
        return len(self.odds) + self.lead_halvings + sum(self.halvings)


def filter_odds(elements: list[int]) -> list[int]:
    return [v for v in elements if v & 1]


def build_collatz3_direct(n: int, dense_cap: int | None = None,
                          budget: int = DEFAULT_BUDGET) -> dict[int, OddLevelRecord]:
    check_value(n)
    seen = SeenSet(dense_cap or 8 * n)
    out: dict[int, OddLevelRecord] = {}

    for x in range(1, n + 1):
        rec = OddLevelRecord(x)
        out[x] = rec
        if x in seen:
            continue
        seen.add(x)
        count = 1

        # even starter: walk its halving run up to the first odd
        v = x
        while not v & 1:
            rec.lead_halvings += 1
            w = v >> 1
            if w in seen:
                rec.exit_value = w
                break
            if count >= budget:
                raise BudgetExceeded(x, budget)
            seen.add(w)
            count += 1
            v = w
        else:
            rec.odds.append(v)
            rec.halvings.append(0)
        if rec.exit_value is not None:
            continue

        while v != 1:
            nxt, k = odd_step(v)
            stopped = False
            for j in range(k, -1, -1):
                w = nxt << j
                if w in seen:
                    rec.exit_value = w
                    stopped = True
                    break
                if count >= budget:
                    raise BudgetExceeded(x, budget)
                seen.add(w)
                count += 1
                if j == k:
                    rec.k_list.append(k)
                if j:
                    rec.halvings[-1] += 1
            if stopped:
                break
            rec.odds.append(nxt)
            rec.halvings.append(0)
            v = nxt
    return out


def build_collatz3_filtered(table: LevelTable, n: int) -> dict[int, list[int]]:
    return {x: filter_odds(level_elements(table, x)) for x in range(1, n + 1)}


@dataclass
class EquivalenceReport:
    agree: bool
    first_mismatch: int | None = None


def check_equivalence(table: LevelTable, n: int,
                      direct: dict[int, OddLevelRecord] | None = None) -> EquivalenceReport:
    """Compare the filtered odd levels of ``table`` with the direct route."""
    if direct is None:
        direct = build_collatz3_direct(n, budget=table.budget)
    for x in range(1, n + 1):
        if filter_odds(level_elements(table, x)) != direct[x].odds:
            return EquivalenceReport(False, x)
    return EquivalenceReport(True)
