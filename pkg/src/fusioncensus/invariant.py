"""Invariant expressions, census tables and identification."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources
from typing import Optional, Sequence, Union

from .cyclo import Cyclo, format_cyclo, format_numeric, parse_cyclo
from .gauge import (
    FormalMonomial,
    evaluate_monomial,
    format_monomial,
    parse_monomial,
    permute_monomial,
)
from .ring import FusionRing, Permutation, automorphisms
from .skeleton import InvalidDataError, SkeletalData, check_vacuum, ring_from_ref


class _NonBraided:
    """Value of an R-bearing invariant on data without R-symbols."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "NON_BRAIDED"

    def __str__(self) -> str:
        return "-"

    def __reduce__(self):
        return (_NonBraided, ())


NON_BRAIDED = _NonBraided()


# -- items ----------------------------------------------------------------


@dataclass(frozen=True)
class Mono:
    m: FormalMonomial


@dataclass(frozen=True)
class TupleItem:
    parts: tuple[FormalMonomial, ...]


@dataclass(frozen=True)
class Orbit:
    inner: Union[Mono, TupleItem]


InvariantItem = Union[Mono, TupleItem, Orbit]
InvariantValue = Union[Cyclo, tuple, frozenset, _NonBraided]


def mentions_r(item: InvariantItem) -> bool:
    if isinstance(item, Mono):
        return item.m.mentions_r()
    if isinstance(item, TupleItem):
        return any(p.mentions_r() for p in item.parts)
    return mentions_r(item.inner)


def monomials(item: InvariantItem) -> list[FormalMonomial]:
    if isinstance(item, Mono):
        return [item.m]
    if isinstance(item, TupleItem):
        return list(item.parts)
    return monomials(item.inner)


def permute_item(sigma: Permutation, item: InvariantItem) -> InvariantItem:
    if isinstance(item, Mono):
        return Mono(permute_monomial(sigma, item.m))
    if isinstance(item, TupleItem):
        return TupleItem(tuple(permute_monomial(sigma, p) for p in item.parts))
    raise ValueError("orbits cannot be nested")


def orbit(item: InvariantItem, group: Sequence[Permutation]) -> list[InvariantItem]:
    """Images of ``item`` under ``group``, deduplicated, in group order."""
    if isinstance(item, Orbit):
        raise ValueError("orbits cannot be nested")
    seen: list[InvariantItem] = []
    for sigma in group:
        img = permute_item(sigma, item)
        if img not in seen:
            seen.append(img)
    return seen


def _eval_mono(m: FormalMonomial, data: SkeletalData):
    if m.mentions_r() and data.R is None:
        return NON_BRAIDED
    return evaluate_monomial(m, data)


def evaluate_item(
    item: InvariantItem,
    data: SkeletalData,
    group: Optional[Sequence[Permutation]] = None,
) -> InvariantValue:
    if isinstance(item, Mono):
        return _eval_mono(item.m, data)
    if isinstance(item, TupleItem):
        return tuple(_eval_mono(p, data) for p in item.parts)
    if isinstance(item.inner, Mono) and item.inner.m.mentions_r() and data.R is None:
        return NON_BRAIDED
    if group is None:
        group = automorphisms(data.ring)
    return frozenset(evaluate_item(x, data) for x in orbit(item.inner, group))


def reduce_columns(evaluations: Sequence[Sequence[InvariantValue]]) -> list[bool]:
    """Keep-mask dropping columns that take one value across all categories."""
    if not evaluations:
        return []
    ncols = len(evaluations[0])
    if len(evaluations) < 2:
        return [True] * ncols
    return [len({row[j] for row in evaluations}) > 1 for j in range(ncols)]


# -- text forms -------------------------------------------------------------


def item_from_json(obj) -> InvariantItem:
    if isinstance(obj, str):
        return Mono(parse_monomial(obj))
    if isinstance(obj, list):
        return TupleItem(tuple(parse_monomial(x) for x in obj))
    if isinstance(obj, dict) and set(obj) == {"orbit"}:
        inner = item_from_json(obj["orbit"])
        if isinstance(inner, Orbit):
            raise ValueError("orbits cannot be nested")
        return Orbit(inner)
    raise ValueError(f"bad invariant item {obj!r}")


def item_to_json(item: InvariantItem):
    if isinstance(item, Mono):
        return format_monomial(item.m)
    if isinstance(item, TupleItem):
        return [format_monomial(p) for p in item.parts]
    return {"orbit": item_to_json(item.inner)}


def _scalar_from_json(obj):
    if obj == "-":
        return NON_BRAIDED
    if not isinstance(obj, str):
        raise ValueError(f"expected a literal, got {obj!r}")
    return parse_cyclo(obj)


def value_from_json(obj, item: InvariantItem) -> InvariantValue:
    """Decode a census cell; the item's shape decides how."""
    if isinstance(item, Mono):
        return _scalar_from_json(obj)
    if isinstance(item, TupleItem):
        if not isinstance(obj, list) or len(obj) != len(item.parts):
            raise ValueError(f"expected a {len(item.parts)}-tuple, got {obj!r}")
        return tuple(_scalar_from_json(x) for x in obj)
    if obj == "-":
        return NON_BRAIDED
    if not isinstance(obj, list):
        raise ValueError(f"expected a set, got {obj!r}")
    return frozenset(value_from_json(x, item.inner) for x in obj)


def _sort_key(v) -> tuple:
    if isinstance(v, Cyclo):
        return (0, format_cyclo(v))
    if isinstance(v, tuple):
        return (1, tuple(_sort_key(x) for x in v))
    return (2, str(v))


def value_to_json(v: InvariantValue):
    if v is NON_BRAIDED:
        return "-"
    if isinstance(v, Cyclo):
        return format_cyclo(v)
    if isinstance(v, tuple):
        return [value_to_json(x) for x in v]
    return [value_to_json(x) for x in sorted(v, key=_sort_key)]


def format_value(v: InvariantValue, digits: Optional[int] = None) -> str:
    """Human form; ``digits`` switches to decimal rendering."""
    if v is NON_BRAIDED:
        return "-"
    if isinstance(v, Cyclo):
        return format_numeric(v, digits) if digits else format_cyclo(v)
    if isinstance(v, tuple):
        return "(" + ", ".join(format_value(x, digits) for x in v) + ")"
    return "{" + ", ".join(format_value(x, digits) for x in sorted(v, key=_sort_key)) + "}"


def numeric_value(v: InvariantValue, digits: int = 3):
    """Decimal strings with the same nesting as :func:`value_to_json`."""
    if v is NON_BRAIDED:
        return "-"
    if isinstance(v, Cyclo):
        return format_numeric(v, digits)
    if isinstance(v, tuple):
        return [numeric_value(x, digits) for x in v]
    return sorted({json.dumps(numeric_value(x, digits)) for x in v})


_NUM = re.compile(
    r"^\s*(?:(?P<re>[-+]?\d+(?:\.\d+)?)\s*)?"
    r"(?:(?P<sign>[-+])?\s*(?P<im>\d+(?:\.\d+)?)?i)?\s*$"
)


def parse_decimal(text: str) -> complex:
    """Parse renderings such as ``-0.809 + 0.588i``, ``-i`` or ``1.414``."""
    m = _NUM.match(text.replace("−", "-"))
    if not m or text.strip() == "":
        raise ValueError(f"bad decimal {text!r}")
    re_part = float(m.group("re")) if m.group("re") else 0.0
    im_part = 0.0
    if "i" in text:
        mag = float(m.group("im")) if m.group("im") else 1.0
        im_part = -mag if m.group("sign") == "-" else mag
        if m.group("re") is None and m.group("sign") is None and text.strip().startswith("-"):
            im_part = -mag
    return complex(re_part, im_part)


def numeric_close(mine, theirs, tol: float = 5e-4) -> bool:
    """Compare a rendered value with a transcribed one, elementwise within ``tol``.

    Sets are compared as sets: every element on either side must be close
    to some element on the other side.
    """
    if mine == "-" or theirs == "-":
        return mine == theirs
    if isinstance(mine, str) and isinstance(theirs, str):
        return abs(parse_decimal(mine) - parse_decimal(theirs)) <= tol
    if not isinstance(mine, list) or not isinstance(theirs, list):
        return False
    mine = [json.loads(x) if isinstance(x, str) and x.startswith(("[", '"')) else x for x in mine]
    theirs = list(theirs)
    return all(any(numeric_close(a, b, tol) for b in theirs) for a in mine) and all(
        any(numeric_close(a, b, tol) for a in mine) for b in theirs
    )


# -- census tables ----------------------------------------------------------


@dataclass
class CensusRow:
    name: str
    nF: int
    nR: int
    nP: int
    values: tuple
    numeric: Optional[list] = None


@dataclass
class CensusTable:
    ring: FusionRing
    columns: list[tuple[str, InvariantItem]]
    rows: list[CensusRow]
    title: str = ""
    ring_ref: object = None

    def column_values(self, data: SkeletalData, group=None) -> tuple:
        if group is None:
            group = automorphisms(data.ring)
        return tuple(evaluate_item(item, data, group) for _, item in self.columns)


def census_from_json(obj: dict) -> CensusTable:
    ring = ring_from_ref(obj["ring"])
    columns = [(c["name"], item_from_json(c["item"])) for c in obj["columns"]]
    rows = []
    for r in obj["rows"]:
        if len(r["values"]) != len(columns):
            raise ValueError(f"row {r['name']} has {len(r['values'])} values for {len(columns)} columns")
        vals = tuple(value_from_json(v, item) for v, (_, item) in zip(r["values"], columns))
        rows.append(CensusRow(r["name"], r["nF"], r["nR"], r["nP"], vals, r.get("numeric")))
    return CensusTable(ring, columns, rows, obj.get("title", ""), obj["ring"])


def census_to_json(table: CensusTable) -> dict:
    from .ring import ring_to_json

    ring = table.ring_ref if isinstance(table.ring_ref, str) else ring_to_json(table.ring)
    out = {"title": table.title, "ring": ring}
    out["columns"] = [{"name": n, "item": item_to_json(i)} for n, i in table.columns]
    rows = []
    for r in table.rows:
        row = {"name": r.name, "nF": r.nF, "nR": r.nR, "nP": r.nP, "values": [value_to_json(v) for v in r.values]}
        if r.numeric is not None:
            row["numeric"] = r.numeric
        rows.append(row)
    out["rows"] = rows
    return out


def load_census(path: str) -> CensusTable:
    with open(path, encoding="utf-8") as fh:
        return census_from_json(json.load(fh))


def bundled_census(name: str) -> CensusTable:
    path = resources.files("fusioncensus") / "data" / "census" / f"{name}.json"
    return census_from_json(json.loads(path.read_text(encoding="utf-8")))


def bundled_census_names() -> list[str]:
    root = resources.files("fusioncensus") / "data" / "census"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


class RingMismatchError(ValueError):
    pass


class VacuumError(InvalidDataError):
    """Identification needs vacuum-normalized F- and R-symbols."""


def match_census(data: SkeletalData, table: CensusTable) -> list[str]:
    """Names of every row whose values all equal the data's invariants."""
    if data.ring != table.ring:
        raise RingMismatchError("data and census table use different fusion rings")
    vac = check_vacuum(data)
    if not vac.passed:
        raise VacuumError(
            "identification requires vacuum F- and R-symbols equal to 1; "
            f"first offending symbol {list(vac.counterexamples[0].index)}"
        )
    got = table.column_values(data)
    return [r.name for r in table.rows if r.values == got]


def parse_category_name(name: str) -> tuple[str, int, int, int]:
    """Split ``[FR_1^{2,1,0}]_{1,1,1}`` into base name and (n_F, n_R, n_P)."""
    m = re.match(r"^\[(.*)\]_\{(\d+),(\d+),(\d+)\}$", name)
    if not m:
        raise ValueError(f"not a category name: {name!r}")
    return m.group(1), int(m.group(2)), int(m.group(3)), int(m.group(4))
