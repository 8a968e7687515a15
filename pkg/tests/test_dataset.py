from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ranklabel import column_stats, histogram, load_csv, normalize_view
from ranklabel.errors import (
    EmptyColumn,
    InvalidArgument,
    InvalidDataset,
    MalformedRow,
    TypeMismatch,
    UnknownAttribute,
)


def csv_of(*lines: str) -> bytes:
    return "\n".join(lines).encode("utf-8")


class TestLoadCsv:
    def test_type_inference(self):
        ds = load_csv(csv_of("a,b", "1,x", "2,y"))
        assert ds.row_count == 2
        assert ds.column("a").kind == "numeric"
        assert ds.column("b").kind == "categorical"
        assert ds.column("a").values == (1.0, 2.0)

    def test_missing_markers(self):
        ds = load_csv(csv_of("a", "1", "2", "NA"))
        assert ds.row_count == 3
        assert ds.column("a").kind == "numeric"
        assert ds.column("a").values == (1.0, 2.0, None)
        for marker in ("", "na", "N/A", "n/a"):
            ds = load_csv(csv_of("a,b", f"1,{marker}", "2,3"))
            assert ds.column("b").values[0] is None, marker

    def test_empty_input_rejected(self):
        with pytest.raises(InvalidDataset):
            load_csv(b"")

    def test_header_only_rejected(self):
        with pytest.raises(InvalidDataset):
            load_csv(b"a,b\n")

    def test_duplicate_headers_rejected(self):
        with pytest.raises(InvalidDataset):
            load_csv(csv_of("a,a", "1,2"))

    def test_empty_header_name_rejected(self):
        with pytest.raises(InvalidDataset):
            load_csv(csv_of("a,", "1,2"))

    def test_ragged_row_reports_index(self):
        with pytest.raises(MalformedRow) as exc:
            load_csv(csv_of("a,b", "1,2", "3"))
        assert exc.value.row_index == 1

    def test_non_utf8_rejected(self):
        with pytest.raises(InvalidDataset):
            load_csv(b"a\n\xff\xfe")

    def test_mixed_column_is_categorical(self):
        ds = load_csv(csv_of("a", "1", "x", "2"))
        assert ds.column("a").kind == "categorical"
        assert ds.column("a").values == ("1", "x", "2")

    def test_numeric_literals(self):
        ds = load_csv(csv_of("a", "-1.5", "+2", "3e-2", ".5", "1."))
        assert ds.column("a").kind == "numeric"
        assert ds.column("a").values == (-1.5, 2.0, 0.03, 0.5, 1.0)

    def test_inf_and_nan_tokens_are_categorical(self):
        ds = load_csv(csv_of("a", "inf", "nan", "1"))
        assert ds.column("a").kind == "categorical"

    def test_quoted_cells(self):
        ds = load_csv(b'a,b\n"1,5",2\n')
        assert ds.column("a").kind == "categorical"
        assert ds.column("a").values == ("1,5",)

    def test_digest_deterministic(self):
        data = csv_of("a,b", "1,x", "2,y")
        assert load_csv(data).source_digest == load_csv(data).source_digest
        assert load_csv(data).source_digest != load_csv(data + b"\n3,z").source_digest


class TestColumnStats:
    def test_even_count_median(self):
        ds = load_csv(csv_of("a", "1", "2", "3", "4"))
        stats = column_stats(ds, "a")
        assert (stats.minimum, stats.maximum, stats.median) == (1, 4, 2.5)
        assert stats.count == 4 and stats.missing == 0

    def test_singleton(self):
        ds = load_csv(csv_of("a", "5"))
        stats = column_stats(ds, "a")
        assert stats.minimum == stats.maximum == stats.median == 5

    def test_subset_matches_direct_sort(self):
        ds = load_csv(csv_of("a", "3", "1", "2"))
        # top-2 rows of the ranking by a descending: rows 0 and 2
        stats = column_stats(ds, "a", subset=[0, 2])
        values = sorted([3.0, 2.0])
        assert stats.minimum == values[0]
        assert stats.maximum == values[-1]
        assert stats.median == sum(values) / 2
        assert stats.count == 2

    def test_missing_excluded(self):
        ds = load_csv(csv_of("a", "1", "NA", "3"))
        stats = column_stats(ds, "a")
        assert stats.count == 2 and stats.missing == 1
        assert stats.median == 2.0

    def test_errors(self):
        ds = load_csv(csv_of("a,b", "1,x"))
        with pytest.raises(UnknownAttribute):
            column_stats(ds, "zzz")
        with pytest.raises(TypeMismatch):
            column_stats(ds, "b")
        ds_missing = load_csv(csv_of("a", "NA"))
        with pytest.raises(EmptyColumn):
            column_stats(ds_missing, "a")
        with pytest.raises(InvalidArgument):
            column_stats(ds, "a", subset=[5])

    @given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=60))
    def test_min_median_max_ordering(self, values):
        rows = "\n".join(repr(v) for v in values)
        ds = load_csv(f"a\n{rows}".encode())
        stats = column_stats(ds, "a")
        assert stats.minimum <= stats.median <= stats.maximum


class TestHistogram:
    def test_two_bins(self):
        ds = load_csv(csv_of("a", "0", "0.5", "1"))
        hist = histogram(ds, "a", 2)
        assert hist.bin_edges == (0.0, 0.5, 1.0)
        assert hist.counts == (1, 2)

    def test_constant_column_single_bin(self):
        ds = load_csv(csv_of("a", "7", "7", "7"))
        hist = histogram(ds, "a", 4)
        assert len(hist.counts) == 1
        assert hist.counts == (3,)
        assert hist.bin_edges[0] < 7 < hist.bin_edges[1]

    def test_last_bin_closed(self):
        ds = load_csv(csv_of("a", "0", "1", "2"))
        hist = histogram(ds, "a", 2)
        assert hist.counts == (1, 2)

    def test_counts_match_direct_counting(self):
        rng = random.Random(7)
        values = [rng.uniform(0, 10) for _ in range(1000)]
        ds = load_csv(("a\n" + "\n".join(repr(v) for v in values)).encode())
        hist = histogram(ds, "a", 10)
        assert sum(hist.counts) == 1000
        edges = hist.bin_edges
        for b in range(10):
            if b < 9:
                expected = sum(1 for v in values if edges[b] <= v < edges[b + 1])
            else:
                expected = sum(1 for v in values if edges[b] <= v <= edges[b + 1])
            assert hist.counts[b] == expected

    def test_bins_validation(self):
        ds = load_csv(csv_of("a", "1"))
        with pytest.raises(InvalidArgument):
            histogram(ds, "a", 0)

    @given(
        st.lists(st.floats(-100, 100), min_size=1, max_size=80),
        st.integers(1, 12),
    )
    @settings(max_examples=60)
    def test_counts_sum_to_non_missing(self, values, bins):
        rows = "\n".join(repr(v) for v in values)
        ds = load_csv(f"a\n{rows}".encode())
        hist = histogram(ds, "a", bins)
        assert sum(hist.counts) == len(values)


class TestNormalizeView:
    def test_minmax(self):
        ds = load_csv(csv_of("a", "2", "4", "6"))
        view = normalize_view(ds, ["a"], "minmax")
        assert view.column("a").values == (0.0, 0.5, 1.0)

    def test_minmax_constant(self):
        ds = load_csv(csv_of("a", "3", "3"))
        view = normalize_view(ds, ["a"], "minmax")
        assert view.column("a").values == (0.5, 0.5)

    def test_zscore(self):
        ds = load_csv(csv_of("a", "1", "2", "3"))
        view = normalize_view(ds, ["a"], "zscore")
        values = view.column("a").values
        sigma = math.sqrt(2 / 3)
        assert values[1] == 0.0
        assert values[0] == pytest.approx(-1 / sigma, abs=1e-12)
        assert values[2] == pytest.approx(1 / sigma, abs=1e-12)
        assert values[0] == pytest.approx(-1.2247, abs=1e-4)

    def test_zscore_constant(self):
        ds = load_csv(csv_of("a", "3", "3"))
        view = normalize_view(ds, ["a"], "zscore")
        assert view.column("a").values == (0.0, 0.0)

    def test_none_is_identity(self):
        ds = load_csv(csv_of("a", "1", "2"))
        assert normalize_view(ds, ["a"], "none") is ds

    def test_missing_stays_missing(self):
        ds = load_csv(csv_of("a", "1", "NA", "3"))
        view = normalize_view(ds, ["a"], "minmax")
        assert view.column("a").values == (0.0, None, 1.0)

    def test_unlisted_columns_pass_through(self):
        ds = load_csv(csv_of("a,b", "1,10", "2,20"))
        view = normalize_view(ds, ["a"], "minmax")
        assert view.column("b").values == (10.0, 20.0)

    def test_categorical_rejected(self):
        ds = load_csv(csv_of("a,b", "1,x"))
        with pytest.raises(TypeMismatch):
            normalize_view(ds, ["b"], "minmax")

    @given(st.lists(st.floats(-1e4, 1e4), min_size=2, max_size=50, unique=True))
    @settings(max_examples=60)
    def test_minmax_bounds_and_zscore_moments(self, values):
        rows = "\n".join(repr(v) for v in values)
        ds = load_csv(f"a\n{rows}".encode())
        mm = normalize_view(ds, ["a"], "minmax").column("a").values
        assert all(0.0 <= v <= 1.0 for v in mm)
        zs = normalize_view(ds, ["a"], "zscore").column("a").values
        n = len(zs)
        mean = math.fsum(zs) / n
        var = math.fsum(v * v for v in zs) / n - mean * mean
        assert abs(mean) < 1e-9
        assert abs(var - 1.0) < 1e-9

    @given(st.lists(st.integers(-10**6, 10**6), min_size=2, max_size=40, unique=True))
    @settings(max_examples=60)
    def test_normalization_is_monotone(self, ints):
        # well-separated values: below float resolution strict order can collapse
        values = [float(v) for v in ints]
        rows = "\n".join(repr(v) for v in values)
        ds = load_csv(f"a\n{rows}".encode())
        order = sorted(range(len(values)), key=lambda i: values[i])
        for mode in ("minmax", "zscore"):
            normed = normalize_view(ds, ["a"], mode).column("a").values
            assert order == sorted(range(len(values)), key=lambda i: normed[i])
