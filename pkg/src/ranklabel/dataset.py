"""Typed, immutable tabular datasets loaded from CSV.

A column is numeric iff every non-missing cell parses as a plain decimal
literal (optional sign, optional fraction, optional exponent); anything else
makes the column categorical. Missing markers are the empty cell, ``NA`` and
``N/A`` (case-insensitive). Cells are whitespace-stripped before both checks,
so `` 1.5`` is numeric and `` x `` is the token ``x``.

All operations here are pure reads over immutable values and are safe to
call concurrently.
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
import re
import statistics
from bisect import bisect_right
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .errors import (
    EmptyColumn,
    InvalidArgument,
    InvalidDataset,
    MalformedRow,
    TypeMismatch,
    UnknownAttribute,
)

NUMERIC = "numeric"
CATEGORICAL = "categorical"

NORMALIZATION_MODES = ("none", "minmax", "zscore")

_NUMBER_RE = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")
_MISSING_TOKENS = frozenset({"", "na", "n/a"})


def _is_missing(cell: str) -> bool:
    return cell.lower() in _MISSING_TOKENS


def _is_number(cell: str) -> bool:
    return _NUMBER_RE.match(cell) is not None


@dataclass(frozen=True)
class Column:
    """One named column: ``values`` holds floats or tokens, ``None`` = missing."""

    name: str
    kind: str
    values: tuple

    def __post_init__(self):
        if self.kind not in (NUMERIC, CATEGORICAL):
            raise InvalidArgument(f"unknown column kind {self.kind!r}")
        want = float if self.kind == NUMERIC else str
        for v in self.values:
            if v is not None and not isinstance(v, want):
                raise InvalidArgument(
                    f"column {self.name!r} is {self.kind} but holds {type(v).__name__}"
                )

    @property
    def missing_count(self) -> int:
        return sum(1 for v in self.values if v is None)

    def non_missing(self) -> list:
        return [v for v in self.values if v is not None]


@dataclass(frozen=True)
class Dataset:
    """Immutable table. ``dropped_rows`` is filled in at ranking time."""

    columns: tuple[Column, ...]
    row_count: int
    source_digest: str
    dropped_rows: int = 0
    _by_name: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            raise InvalidDataset("duplicate column names")
        if any(not n for n in names):
            raise InvalidDataset("empty column name")
        for c in self.columns:
            if len(c.values) != self.row_count:
                raise InvalidDataset(
                    f"column {c.name!r} has {len(c.values)} values, expected {self.row_count}"
                )
        object.__setattr__(self, "_by_name", {c.name: c for c in self.columns})

    @property
    def column_names(self) -> list[str]:
        return [c.name for c in self.columns]

    def column(self, name: str) -> Column:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownAttribute(f"no column named {name!r}") from None

    def numeric_column(self, name: str) -> Column:
        col = self.column(name)
        if col.kind != NUMERIC:
            raise TypeMismatch(f"column {name!r} is categorical, expected numeric")
        return col

    def categorical_column(self, name: str) -> Column:
        col = self.column(name)
        if col.kind != CATEGORICAL:
            raise TypeMismatch(f"column {name!r} is numeric, expected categorical")
        return col

    def with_dropped_rows(self, dropped: int) -> "Dataset":
        """Same data annotated with the number of rows dropped at ranking time."""
        return replace(self, dropped_rows=dropped)


@dataclass(frozen=True)
class ColumnStats:
    minimum: float
    maximum: float
    median: float
    count: int
    missing: int


@dataclass(frozen=True)
class Histogram:
    """Equal-width bins; every bin is [lo, hi) except the last, which is [lo, hi]."""

    attribute: str
    bin_edges: tuple[float, ...]
    counts: tuple[int, ...]


def load_csv(data: bytes) -> Dataset:
    """Parse CSV bytes (RFC-4180 quoting, comma delimiter, UTF-8, header row).

    Raises InvalidDataset for empty/header-only input, duplicate or empty
    header names, or undecodable bytes; MalformedRow (with the 0-based data
    row index) when a row's cell count differs from the header's.
    """
    try:
        text = data.decode("utf-8-sig")
    except UnicodeDecodeError as e:
        raise InvalidDataset(f"input is not UTF-8 text: {e}") from None
    records = list(csv.reader(io.StringIO(text)))
    if not records:
        raise InvalidDataset("empty input")
    header = [name.strip() for name in records[0]]
    if len(set(header)) != len(header):
        raise InvalidDataset("duplicate header names")
    if any(not name for name in header):
        raise InvalidDataset("empty header name")
    rows = records[1:]
    if not rows:
        raise InvalidDataset("header-only input: no data rows")
    rows = [row for row in rows if row]  # csv.reader yields [] for blank lines
    if not rows:
        raise InvalidDataset("header-only input: no data rows")
    width = len(header)
    cells: list[list[str]] = []
    for i, row in enumerate(rows):
        if len(row) != width:
            raise MalformedRow(i, f"row {i} has {len(row)} cells, expected {width}")
        cells.append([c.strip() for c in row])

    columns = []
    for j, name in enumerate(header):
        raw = [row[j] for row in cells]
        numeric = all(_is_missing(c) or _is_number(c) for c in raw)
        if numeric:
            values = tuple(None if _is_missing(c) else float(c) for c in raw)
            columns.append(Column(name, NUMERIC, values))
        else:
            values = tuple(None if _is_missing(c) else c for c in raw)
            columns.append(Column(name, CATEGORICAL, values))
    digest = hashlib.sha256(data).hexdigest()
    return Dataset(tuple(columns), len(rows), digest)


def _subset_values(col: Column, subset: Sequence[int] | None, row_count: int) -> list:
    if subset is None:
        return list(col.values)
    out = []
    for i in subset:
        if not 0 <= i < row_count:
            raise InvalidArgument(f"row index {i} out of range")
        out.append(col.values[i])
    return out


def column_stats(
    dataset: Dataset, attribute: str, subset: Sequence[int] | None = None
) -> ColumnStats:
    """Min / max / median over the non-missing values of a numeric column.

    ``subset`` restricts the computation to the given row indices. The median
    of an even count is the mean of the two middle values.
    """
    col = dataset.numeric_column(attribute)
    values = _subset_values(col, subset, dataset.row_count)
    present = [v for v in values if v is not None]
    if not present:
        raise EmptyColumn(f"column {attribute!r} has no non-missing values in scope")
    return ColumnStats(
        minimum=min(present),
        maximum=max(present),
        median=float(statistics.median(present)),
        count=len(present),
        missing=len(values) - len(present),
    )


def histogram(dataset: Dataset, attribute: str, bins: int) -> Histogram:
    """Equal-width histogram over [min, max] of a numeric column.

    A constant column collapses to a single bin regardless of ``bins``.
    """
    if bins < 1:
        raise InvalidArgument("bins must be >= 1")
    col = dataset.numeric_column(attribute)
    present = col.non_missing()
    if not present:
        raise EmptyColumn(f"column {attribute!r} has no non-missing values")
    lo, hi = min(present), max(present)
    if lo == hi:
        return Histogram(attribute, (lo - 0.5, hi + 0.5), (len(present),))
    edges = [lo + i * (hi - lo) / bins for i in range(bins + 1)]
    edges[-1] = hi
    counts = [0] * bins
    last = bins - 1
    for v in present:
        idx = bisect_right(edges, v) - 1
        counts[idx if idx <= last else last] += 1
    return Histogram(attribute, tuple(edges), tuple(counts))


def column_descriptor(dataset: Dataset, name: str) -> dict:
    """JSON-ready column summary: kind, counts, stats or distinct cardinality."""
    col = dataset.column(name)
    present = col.non_missing()
    out: dict = {
        "name": col.name,
        "kind": col.kind,
        "count": len(present),
        "missing": col.missing_count,
    }
    if col.kind == NUMERIC:
        if present:
            stats = column_stats(dataset, name)
            out["stats"] = {
                "minimum": stats.minimum,
                "maximum": stats.maximum,
                "median": stats.median,
            }
    else:
        out["distinct"] = len(set(present))
    return out


def _minmax(values: Iterable[float | None]) -> tuple:
    present = [v for v in values if v is not None]
    lo, hi = min(present), max(present)
    if lo == hi:
        return tuple(None if v is None else 0.5 for v in values)
    span = hi - lo
    return tuple(None if v is None else (v - lo) / span for v in values)


def _zscore(values: Iterable[float | None]) -> tuple:
    present = [v for v in values if v is not None]
    mean = math.fsum(present) / len(present)
    # scale by the largest deviation so squaring can't underflow or overflow
    scale = max(abs(v - mean) for v in present)
    if scale == 0.0:
        return tuple(None if v is None else 0.0 for v in values)
    rms = math.sqrt(
        math.fsum(((v - mean) / scale) ** 2 for v in present) / len(present)
    )
    sd = scale * rms
    return tuple(None if v is None else (v - mean) / sd for v in values)


def normalize_view(dataset: Dataset, attributes: Sequence[str], mode: str) -> Dataset:
    """Dataset view with the listed numeric columns rescaled.

    ``minmax`` maps to [0, 1]; ``zscore`` centers to mean 0 and population
    standard deviation 1; ``none`` is the identity. Constant columns map to
    0.5 / 0.0 so downstream scoring never divides by zero. Missing values
    stay missing; other columns pass through. The view keeps the source
    digest: it derives from the same bytes.
    """
    if mode not in NORMALIZATION_MODES:
        raise InvalidArgument(f"unknown normalization mode {mode!r}")
    targets = set(attributes)
    for name in targets:
        dataset.numeric_column(name)
    if mode == "none" or not targets:
        return dataset
    transform = _minmax if mode == "minmax" else _zscore
    new_columns = []
    for col in dataset.columns:
        if col.name in targets and col.non_missing():
            new_columns.append(Column(col.name, NUMERIC, transform(col.values)))
        else:
            new_columns.append(col)
    return Dataset(
        tuple(new_columns), dataset.row_count, dataset.source_digest, dataset.dropped_rows
    )
