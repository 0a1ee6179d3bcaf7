"""Hypothetical-cycle machinery: parity cases, cyclic pairs, and bounds.

A cycle inside a level means f^k(x) = f^E(x) for some k < E = e(x). The
parities of (f^(k-1)(x), f^k(x), f^(E-1)(x), f^E(x)) admit five patterns.
Three of them force the two predecessors to coincide and are refuted; the
other two leave an odd and an even value mapping to the same number, a
"cyclic pair".

The bounds use exact integer comparisons wherever the floating estimate
lands within ``GUARD`` of an integer.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Iterable

from .core import check_value, two_adic_valuation
from .errors import ParityError
from .levels import LevelTable, level_elements

GUARD = 1e-9
LOG2_3 = math.log(3) / math.log(2)


class Parity(enum.Enum):
    ODD = "odd"
    EVEN = "even"


ODD, EVEN = Parity.ODD, Parity.EVEN

# id -> (pattern, refuted, relation or reason)
POSSIBILITIES = {
    1: ((ODD, EVEN, EVEN, EVEN), False, "e/2 = 3d+1"),
    2: ((ODD, EVEN, ODD, EVEN), True, "d = e"),
    3: ((EVEN, EVEN, EVEN, EVEN), True, "d = e"),
    4: ((EVEN, EVEN, ODD, EVEN), False, "d/2 = 3e+1"),
    5: ((EVEN, ODD, EVEN, ODD), True, "d = e"),
}
_BY_PATTERN = {pat: pid for pid, (pat, _, _) in POSSIBILITIES.items()}


@dataclass(frozen=True)
class ParityCase:
    parities: tuple[Parity, Parity, Parity, Parity]
    possibility_id: int | None
    refuted: bool
    refutation_reason: str

    @property
    def survives(self) -> bool:
        return not self.refuted


def classify_parity(parities: Iterable[Parity | str]) -> ParityCase:
    quad = tuple(Parity(p) for p in parities)
    if len(quad) != 4:
        raise ValueError("expected four parities")
    pid = _BY_PATTERN.get(quad)
    if pid is None:
        return ParityCase(quad, None, True, "pattern cannot occur")
    _, refuted, text = POSSIBILITIES[pid]
    return ParityCase(quad, pid, refuted, text if refuted else f"consistent: {text}")


def all_parity_cases() -> list[ParityCase]:
    return [classify_parity(q) for q in itertools.product(Parity, repeat=4)]


def is_cyclic_pair(o: int, e: int) -> bool:
    """True when odd ``o`` and even ``e`` share a successor: 3o+1 = e/2."""
    check_value(o)
    check_value(e)
    if not o & 1:
        raise ParityError(f"{o} is not odd")
    if e & 1:
        raise ParityError(f"{e} is not even")
    hit = 3 * o + 1 == e >> 1
    if hit:
        assert e > o
    return hit


def search_cyclic_pairs(table: LevelTable, n: int) -> list[tuple[int, int, int]]:
    """Every (level, o, e) with o, e in the same level and 3o+1 = e/2.

    Each hit would put two predecessors of 3o+1 in one level, which the
    no-repeat construction cannot produce, so a non-empty result is an
    engine defect.
    """
    table._check(n)
    hits = []
    for x in range(1, n + 1):
        elems = level_elements(table, x)
        if len(elems) < 2:
            continue
        members = set(elems)
        for o in elems:
            if o & 1 and 6 * o + 2 in members:
                hits.append((x, o, 6 * o + 2))
    return hits


def _strict_ceil(x: float, exact_above) -> int:
    """Least integer > x; ``exact_above(m)`` decides m > x exactly near integers."""
    r = round(x)
    if abs(x - r) < GUARD:
        return r if exact_above(r) else r + 1
    return math.floor(x) + 1


def _strict_floor(x: float, exact_below) -> int:
    """Greatest integer < x; ``exact_below(m)`` decides m < x exactly near integers."""
    r = round(x)
    if abs(x - r) < GUARD:
        return r if exact_below(r) else r - 1
    return math.ceil(x) - 1


def cycle_divisor_bound(n_odd: int) -> int:
    """Least total halving count a cycle with ``n_odd`` odd steps could use.

    That is the least integer K with K > n_odd*log2(3), i.e. 2**K > 3**n_odd.
    """
    check_value(n_odd)
    return _strict_ceil(n_odd * LOG2_3, lambda m: 2**m > 3**n_odd)


def pq_bounds(e_m: int) -> tuple[int, int]:
    """(p_max, q_min) for a cyclic level of ``e_m`` elements.

    p_max is the greatest p < e_m/(1+log2 3) (equivalently 6**p < 2**e_m);
    q_min the least q > e_m/(1+log3 2) (equivalently 6**q > 3**e_m).
    """
    check_value(e_m)
    if e_m < 2:
        raise ValueError("e_m must be >= 2")
    p_real = e_m / (1 + LOG2_3)
    q_real = e_m / (1 + 1 / LOG2_3)
    p_max = _strict_floor(p_real, lambda m: 6**m < 2**e_m)
    q_min = _strict_ceil(q_real, lambda m: 6**m > 3**e_m)
    return p_max, q_min


@dataclass(frozen=True)
class CycleBoundReport:
    n_odd: int
    sum_k_min: int
    e_m: int | None = None
    p_max: int | None = None
    q_min: int | None = None


def cycle_bound_report(n_odd: int, e_m: int | None = None) -> CycleBoundReport:
    if e_m is None:
        return CycleBoundReport(n_odd, cycle_divisor_bound(n_odd))
    p_max, q_min = pq_bounds(e_m)
    return CycleBoundReport(n_odd, cycle_divisor_bound(n_odd), e_m, p_max, q_min)


def product_identity_holds(odds: list[int]) -> bool:
    """Whether prod(3o+1) == 2**sum(k) * prod(o) for the odd list.

    k_i is the exact 2-adic exponent of 3o_i+1. The identity holds for a
    list closing into a cycle under the odd-compressed map.
    """
    if not odds:
        raise ValueError("empty odd list")
    lhs = rhs = 1
    total_k = 0
    for o in odds:
        check_value(o)
        if not o & 1:
            raise ParityError(f"{o} is not odd")
        t = 3 * o + 1
        lhs *= t
        rhs *= o
        total_k += two_adic_valuation(t)
    return lhs == rhs << total_k


def log_exponent(o: int, o_next: int) -> float:
    """Real-valued k with o_next = (3o+1)/2**k, for consistency checks."""
    return (math.log(3 * o + 1) - math.log(o_next)) / math.log(2)
