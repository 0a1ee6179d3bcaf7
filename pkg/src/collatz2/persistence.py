"""File formats for level tables and stats series, plus the OEIS cross-check.

Levels CSV: header ``x,e,level,s,touch,level_max,ender,exit``, one row per
x = 1..N. Fields of empty levels are blank, as is ``exit`` for the level of 1.
Levels JSONL: one compact object per non-empty level, in starter order.
Stats CSV: header ``n,nz,z,nz_ratio,cum_e,maximal,starter_avg``; ratios to
6 decimals, rounded half-even from the exact rational.

All outputs are UTF-8 with LF line endings and end in a single newline.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .core import trajectory
from .errors import NotRetained, ParseError, SchemaError
from .levels import LevelTable, _zeros
from .stats import StatsSeries

LEVELS_HEADER = "x,e,level,s,touch,level_max,ender,exit"
STATS_HEADER = "n,nz,z,nz_ratio,cum_e,maximal,starter_avg"
FORMATS = ("csv", "jsonl")


def _write_lines(path, lines: list[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line)
            fh.write("\n")


def _opt(v: int) -> str:
    return str(v) if v else ""


def levels_csv_lines(table: LevelTable) -> list[str]:
    lines = [LEVELS_HEADER]
    for x in range(1, table.bound + 1):
        ex = table.e[x]
        lines.append(",".join((
            str(x), str(ex), str(table.level_of[x]), str(table.steps(x)),
            str(table.visit_index[x]),
            _opt(table.level_max[x]) if ex else "",
            _opt(table.ender[x]) if ex else "",
            _opt(table.exit_value[x]) if ex else "",
        )))
    return lines


def levels_jsonl_lines(table: LevelTable) -> list[str]:
    if table.elements is None:
        raise NotRetained("jsonl export needs retained element lists")
    lines = []
    for x in range(1, table.bound + 1):
        elems = table.elements.get(x)
        if not elems:
            continue
        obj = {"starter": x, "elements": elems}
        if table.exit_value[x]:
            obj["exit"] = table.exit_value[x]
        lines.append(json.dumps(obj, separators=(",", ":")))
    return lines


def export_levels(table: LevelTable, path, fmt: str = "csv") -> int:
    """Write ``table`` to ``path``; returns the number of rows or records."""
    if fmt == "csv":
        lines = levels_csv_lines(table)
        _write_lines(path, lines)
        return len(lines) - 1
    if fmt == "jsonl":
        lines = levels_jsonl_lines(table)
        _write_lines(path, lines)
        return len(lines)
    raise ValueError(f"unknown format {fmt!r}")


def _read_lines(path) -> list[str]:
    text = Path(path).read_bytes().decode("utf-8")
    if text and not text.endswith("\n"):
        raise ParseError("file does not end with a newline (truncated?)", text.count("\n") + 1)
    return text.split("\n")[:-1]


def _int_field(raw: str, lineno: int, name: str, optional: bool = False) -> int:
    if raw == "" and optional:
        return 0
    if not raw.isdigit():
        raise ParseError(f"bad {name} field {raw!r}", lineno)
    return int(raw)


def _import_csv(path) -> LevelTable:
    lines = _read_lines(path)
    if not lines:
        raise ParseError("empty file", 1)
    if lines[0] != LEVELS_HEADER:
        raise SchemaError(f"expected header {LEVELS_HEADER!r}, got {lines[0]!r}")
    n = len(lines) - 1
    if n < 1:
        raise ParseError("no data rows", 2)
    e, lv, vi, steps = _zeros(n + 1), _zeros(n + 1), _zeros(n + 1), _zeros(n + 1)
    top, ender, exit_value = _zeros(n + 1), _zeros(n + 1), _zeros(n + 1)
    names = LEVELS_HEADER.split(",")
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != len(names):
            raise ParseError(f"expected {len(names)} fields, got {len(parts)}", lineno)
        x = _int_field(parts[0], lineno, "x")
        if x != lineno - 1:
            raise ParseError(f"expected x={lineno - 1}, got {x}", lineno)
        e[x] = _int_field(parts[1], lineno, "e")
        lv[x] = _int_field(parts[2], lineno, "level")
        steps[x] = _int_field(parts[3], lineno, "s")
        vi[x] = _int_field(parts[4], lineno, "touch")
        top[x] = _int_field(parts[5], lineno, "level_max", optional=True)
        ender[x] = _int_field(parts[6], lineno, "ender", optional=True)
        exit_value[x] = _int_field(parts[7], lineno, "exit", optional=True)
        if not 1 <= lv[x] <= x:
            raise ParseError(f"level {lv[x]} out of range for x={x}", lineno)
        if bool(e[x]) != bool(top[x]) or bool(e[x]) != bool(ender[x]):
            raise ParseError("level_max/ender must be present exactly when e > 0", lineno)
    return LevelTable(n, e, lv, vi, top, ender, exit_value, steps=steps)


def _import_jsonl(path, bound: int | None) -> LevelTable:
    lines = _read_lines(path)
    records = []
    for lineno, line in enumerate(lines, start=1):
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", lineno) from None
        if not isinstance(obj, dict) or set(obj) - {"starter", "elements", "exit"} \
                or "starter" not in obj or "elements" not in obj:
            raise SchemaError(f"line {lineno}: unexpected record keys")
        elems = obj["elements"]
        if not elems or elems[0] != obj["starter"]:
            raise ParseError("elements must be non-empty and start with the starter", lineno)
        if records and obj["starter"] <= records[-1]["starter"]:
            raise ParseError("starters must be strictly increasing", lineno)
        records.append(obj)
    if not records:
        raise ParseError("no records", 1)

    n = bound if bound is not None else records[-1]["starter"]
    e, lv, vi = _zeros(n + 1), _zeros(n + 1), _zeros(n + 1)
    top, ender, exit_value = _zeros(n + 1), _zeros(n + 1), _zeros(n + 1)
    elements: dict[int, list[int]] = {}
    counter = 0
    for obj in records:
        x = obj["starter"]
        if x > n:
            raise ParseError(f"starter {x} above bound {n}", 0)
        elems = obj["elements"]
        elements[x] = elems
        e[x] = len(elems)
        top[x] = max(elems)
        ender[x] = elems[-1]
        exit_value[x] = obj.get("exit", 0)
        for v in elems:
            if v <= n:
                vi[v] = counter
                lv[v] = x
            counter += 1
    missing = [x for x in range(1, n + 1) if not lv[x]]
    if missing:
        raise ParseError(f"values {missing[:5]} are not covered by any level", len(lines))
    return LevelTable(n, e, lv, vi, top, ender, exit_value, elements=elements)


def import_levels(path, fmt: str = "csv", bound: int | None = None) -> LevelTable:
    """Rebuild a query-capable table from an :func:`export_levels` file.

    JSONL omits empty levels, so its bound defaults to the last starter;
    pass ``bound`` when trailing starters had empty levels.
    """
    if fmt == "csv":
        return _import_csv(path)
    if fmt == "jsonl":
        return _import_jsonl(path, bound)
    raise ValueError(f"unknown format {fmt!r}")


def format_ratio(value: Fraction, places: int = 6) -> str:
    """Decimal rendering of an exact rational, rounded half-even."""
    value = Fraction(value)
    scale = 10**places
    q, r = divmod(value.numerator * scale, value.denominator)
    twice = 2 * r
    if twice > value.denominator or (twice == value.denominator and q & 1):
        q += 1
    sign = "-" if q < 0 else ""
    q = abs(q)
    return f"{sign}{q // scale}.{q % scale:0{places}d}"


def stats_csv_lines(series: StatsSeries) -> list[str]:
    if not series.rows:
        raise ValueError("empty stats series")
    lines = [STATS_HEADER]
    for r in series.rows:
        lines.append(f"{r.n},{r.nz},{r.z},{format_ratio(r.nz_ratio)},{r.cum_e},"
                     f"{r.maximal},{format_ratio(r.starter_avg)}")
    return lines


def export_stats(series: StatsSeries, path) -> int:
    lines = stats_csv_lines(series)
    _write_lines(path, lines)
    return len(lines) - 1


@dataclass
class OeisFixture:
    rows: dict[int, list[int]]


@dataclass
class CrosscheckReport:
    checked: int
    mismatches: list[int] = field(default_factory=list)


def load_oeis_fixture() -> OeisFixture:
    text = resources.files("collatz2").joinpath("data/a070165.txt").read_text("utf-8")
    rows = {}
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        head, _, body = line.partition(":")
        rows[int(head)] = [int(t) for t in body.split()]
    return OeisFixture(rows)


def oeis_crosscheck(fixture: OeisFixture | None = None) -> CrosscheckReport:
    if fixture is None:
        fixture = load_oeis_fixture()
    bad = [n for n, row in sorted(fixture.rows.items()) if trajectory(n) != row]
    return CrosscheckReport(len(fixture.rows), bad)
