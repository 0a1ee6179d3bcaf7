"""Lambda indicator, nz/z counts, and the lemma verification suite."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .core import U64_MAX, f_step, stopping_steps
from .levels import LevelTable

VERIFIED = "verified"
REPORTED = "reported"
ALL_LEMMAS = tuple(range(1, 10))


def lambda_of(table: LevelTable, m: int) -> int:
    return 1 if table.record(m).e > 0 else 0


@dataclass(frozen=True)
class StatsRow:
    n: int
    nz: int
    z: int
    cum_e: int
    maximal: int
    starter_avg: Fraction

    @property
    def nz_ratio(self) -> Fraction:
        return Fraction(self.nz, self.n)


@dataclass
class StatsSeries:
    rows: list[StatsRow]

    @property
    def checkpoints(self) -> list[int]:
        return [r.n for r in self.rows]


def stats_series(table: LevelTable, checkpoints: Iterable[int]) -> StatsSeries:
    points = list(checkpoints)
    if points != sorted(points) or len(set(points)) != len(points):
        raise ValueError("checkpoints must be strictly increasing")
    for n in points:
        table._check(n)
    e = table.e
    rows = []
    nz = 0
    starter_sum = 0
    i = 0
    for n in points:
        while i < n:
            i += 1
            if e[i]:
                nz += 1
                starter_sum += i
        rows.append(StatsRow(n=n, nz=nz, z=n - nz, cum_e=table.cum_e[n],
                             maximal=table.maximal_prefix[n],
                             starter_avg=Fraction(starter_sum, n)))
    return StatsSeries(rows)


def decade_checkpoints(n: int) -> list[int]:
    """Powers of ten up to n, then n itself."""
    out = []
    p = 10
    while p < n:
        out.append(p)
        p *= 10
    out.append(n)
    return out


@dataclass
class LemmaEntry:
    id: int
    status: str
    violations: list = field(default_factory=list)
    metric: float | None = None
    detail: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass
class LemmaReport:
    entries: dict[int, LemmaEntry]
    structure: dict[str, list] = field(default_factory=dict)

    @property
    def verified_clean(self) -> bool:
        """No violations among the checked lemmas and structural invariants."""
        return (all(en.ok for en in self.entries.values() if en.status == VERIFIED)
                and not any(self.structure.values()))

    def lines(self) -> list[str]:
        out = []
        for lid in sorted(self.entries):
            en = self.entries[lid]
            word = ("ok" if en.ok else "VIOLATED") if en.status == VERIFIED else en.status
            text = f"lemma {lid}: {word}"
            if en.violations:
                text += f" ({len(en.violations)} witnesses, first {en.violations[:5]})"
            if en.metric is not None:
                text += f" metric={en.metric:.6g}"
            out.append(text)
            for key, value in en.detail.items():
                out.append(f"  {key}: {value}")
        for name, bad in self.structure.items():
            out.append(f"structure {name}: " + ("ok" if not bad else f"VIOLATED {bad[:5]}"))
        return out


def _lemma1(table, n):
    return [m for m in range(1, n + 1) if table.level_of[m] < m and table.e[m]]


def _lemma2(table, n):
    return [m for m in range(1, n + 1) if table.e[m] and table.level_of[m] != m]


def _lemma3(table, n):
    bad = []
    for x in range(2, n + 1):
        ex = table.e[x]
        if not ex:
            continue
        out = table.exit_value[x]
        if ex != table.steps(x) - table.steps(out):
            bad.append(x)
    return bad


def _lemma4(table, n):
    return [v for v in range(2, n + 1) if table.steps(v) != table.steps(f_step(v)) + 1]


def _lemma5(table, n):
    bad = []
    vi, lv, e = table.visit_index, table.level_of, table.e
    for y in range(1, n + 1):
        x = lv[y]
        if x == y:
            continue
        offset = vi[y] - vi[x]
        if e[y] or not 1 <= offset < e[x]:
            bad.append(y)
    if table.elements is not None:
        for x, elems in table.elements.items():
            if x > n:
                continue
            bad.extend(y for y in elems[1:] if y <= table.bound and e[y])
    return sorted(set(bad))


def _lemma6(table, k_max, n_max):
    bad = []
    cache = table.cache
    for k in range(1, k_max + 1):
        base = stopping_steps(k, cache)
        for m in range(1, n_max + 1):
            v = k << m
            if v > U64_MAX:
                break
            if stopping_steps(v, cache) != base + m:
                bad.append((k, m))
    return bad


def _lemma7(table, n):
    slack_min = None
    nonpositive = []
    evaluated = 0
    z_checked = z_holds = 0
    nz_prefix = None
    for m in range(1, n + 1):
        if table.e[m] < 2:
            continue
        evaluated += 1
        slack = table.maximal_prefix[m] - table.cum_e[m]
        if slack_min is None or slack < slack_min:
            slack_min = slack
        if slack <= 0:
            nonpositive.append(m)
        top = table.maximal_prefix[m]
        if top <= table.bound:
            if nz_prefix is None:
                nz_prefix = _nz_prefix(table)
            z_checked += 1
            if table.cum_e[m] <= top - nz_prefix[top]:
                z_holds += 1
    return LemmaEntry(
        7, REPORTED, nonpositive, metric=slack_min,
        detail={"evaluated_at": evaluated,
                "sum_e_below_z_of_maximal": f"{z_holds}/{z_checked} (only where maximal(n) <= bound)"},
    )


def _nz_prefix(table):
    out = [0] * (table.bound + 1)
    c = 0
    for i in range(1, table.bound + 1):
        if table.e[i]:
            c += 1
        out[i] = c
    return out


def _lemma8(table, n):
    bad = []
    nz = 0
    total = 0
    for m in range(1, n + 1):
        if table.e[m]:
            nz += 1
            total += m
        full = m * (m + 1) // 2
        if (total < full) != (nz < m) or total > full:
            bad.append(m)
    ratio = Fraction(total, n) / Fraction(n + 1, 2)
    return LemmaEntry(8, REPORTED, bad, metric=float(ratio),
                      detail={"starter_avg": float(Fraction(total, n)),
                              "half_n_plus_1": (n + 1) / 2})


def _lemma9(table, n):
    series = stats_series(table, decade_checkpoints(n))
    ratios = {r.n: round(float(r.nz_ratio), 6) for r in series.rows}
    last = series.rows[-1]
    return LemmaEntry(9, REPORTED, [], metric=float(last.nz_ratio),
                      detail={"nz_ratio": ratios,
                              "below_half": all(r.nz_ratio < Fraction(1, 2) for r in series.rows)})


def verify_lemmas(table: LevelTable, n: int, lemma_ids: Iterable[int] = ALL_LEMMAS,
                  lemma6_k: int = 100, lemma6_n: int = 20,
                  structure: bool = True) -> LemmaReport:
    """Check lemmas 1-6 exhaustively up to n and report metrics for 7-9."""
    table._check(n)
    ids = sorted(set(lemma_ids))
    for lid in ids:
        if lid not in ALL_LEMMAS:
            raise ValueError(f"no lemma {lid}")
    checks = {
        1: lambda: _lemma1(table, n),
        2: lambda: _lemma2(table, n),
        3: lambda: _lemma3(table, n),
        4: lambda: _lemma4(table, n),
        5: lambda: _lemma5(table, n),
        6: lambda: _lemma6(table, lemma6_k, lemma6_n),
    }
    entries = {}
    for lid in ids:
        if lid in checks:
            entries[lid] = LemmaEntry(lid, VERIFIED, checks[lid]())
        elif lid == 7:
            entries[lid] = _lemma7(table, n)
        elif lid == 8:
            entries[lid] = _lemma8(table, n)
        else:
            entries[lid] = _lemma9(table, n)
    report = LemmaReport(entries)
    if structure:
        report.structure = check_structure(table)
    return report


def check_structure(table: LevelTable) -> dict[str, list]:
    """Engine invariants: partition, ordering inside levels, starter parity."""
    n = table.bound
    e, lv, vi = table.e, table.level_of, table.visit_index
    out: dict[str, list] = {}

    bad = [x for x in range(1, n + 1) if not 1 <= lv[x] <= x]
    if len(set(vi[1:])) != n:
        bad.append("duplicate visit index")
    if table.elements is not None:
        seen = set()
        for elems in table.elements.values():
            for v in elems:
                if v in seen:
                    bad.append(v)
                seen.add(v)
        bad.extend(x for x in range(1, n + 1) if x not in seen)
    out["partition"] = bad

    bad = [y for y in range(1, n + 1) if lv[y] != y and not y > lv[y]]
    if table.elements is not None:
        for x, elems in table.elements.items():
            bad.extend(y for y in elems[1:] if y <= x)
    out["non_starter_above_starter"] = bad

    out["even_starter_at_most_one"] = [x for x in range(2, n + 1, 2) if e[x] > 1]
    out["long_level_odd_starter"] = [x for x in range(1, n + 1) if e[x] >= 2 and not x & 1]

    bad = []
    for y in range(1, n + 1):
        x = lv[y]
        offset = vi[y] - vi[x]
        if not 0 <= offset < e[x]:
            bad.append(y)
        elif table.elements is not None and table.elements[x][offset] != y:
            bad.append(y)
    out["touch_consistency"] = bad
    return out
