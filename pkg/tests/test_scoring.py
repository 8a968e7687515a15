from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ranklabel import ScoringSpec, build_ranking, compute_scores, load_csv, rank
from ranklabel.errors import (
    AllRowsDropped,
    InvalidArgument,
    TypeMismatch,
    UnknownAttribute,
)


def table(rows: list[tuple[float, float]]) -> bytes:
    body = "\n".join(f"{a},{b}" for a, b in rows)
    return f"a,b\n{body}".encode()


class TestComputeScores:
    def test_zero_weight_annihilates(self):
        ds = load_csv(table([(0.4, 0.9)]))
        scored = compute_scores(ds, ScoringSpec({"a": 1.0, "b": 0.0}))
        assert scored == [(0, 0.4)]

    def test_convex_combination(self):
        ds = load_csv(table([(1.0, 0.0)]))
        scored = compute_scores(ds, ScoringSpec({"a": 0.5, "b": 0.5}))
        assert scored == [(0, 0.5)]

    def test_matches_hand_computed_weighted_sum(self):
        rng = random.Random(11)
        rows = [(rng.uniform(0, 10), rng.uniform(-5, 5)) for _ in range(5)]
        ds = load_csv(table(rows))
        spec = ScoringSpec({"a": 1.0, "b": -1.0}, "minmax")
        scored = dict(compute_scores(ds, spec))
        a_vals = [r[0] for r in rows]
        b_vals = [r[1] for r in rows]
        a_lo, a_hi = min(a_vals), max(a_vals)
        b_lo, b_hi = min(b_vals), max(b_vals)
        for i, (a, b) in enumerate(rows):
            expected = (a - a_lo) / (a_hi - a_lo) - (b - b_lo) / (b_hi - b_lo)
            assert scored[i] == pytest.approx(expected, abs=1e-12)

    def test_rows_missing_weighted_attribute_excluded(self):
        ds = load_csv(b"a,b\n1,2\nNA,3\n4,5")
        scored = compute_scores(ds, ScoringSpec({"a": 1.0}))
        assert [i for i, _ in scored] == [0, 2]

    def test_all_rows_dropped(self):
        ds = load_csv(b"a\nNA\nNA")
        # column of only missing markers still infers numeric
        with pytest.raises(AllRowsDropped):
            compute_scores(ds, ScoringSpec({"a": 1.0}))

    def test_validation_errors(self):
        ds = load_csv(b"a,b\n1,x")
        with pytest.raises(UnknownAttribute):
            compute_scores(ds, ScoringSpec({"nope": 1.0}))
        with pytest.raises(TypeMismatch):
            compute_scores(ds, ScoringSpec({"b": 1.0}))
        with pytest.raises(InvalidArgument):
            ScoringSpec({})
        with pytest.raises(InvalidArgument):
            ScoringSpec({"a": 0.0})


class TestRank:
    def test_tie_broken_by_row_index(self):
        ranking = rank([(0, 0.2), (1, 0.9), (2, 0.9), (3, 0.1)], k=4)
        assert ranking.order == (1, 2, 0, 3)
        assert ranking.scores == (0.9, 0.9, 0.2, 0.1)

    def test_single_row(self):
        ranking = rank([(0, 1.0)], k=10)
        assert ranking.order == (0,)
        assert ranking.k == 1

    def test_matches_reference_sort(self):
        rng = random.Random(3)
        scored = [(i, rng.random()) for i in range(100)]
        ranking = rank(scored, k=10)
        reference = [i for i, _ in sorted(scored, key=lambda p: (-p[1], p[0]))]
        assert list(ranking.order) == reference

    def test_empty_rejected(self):
        with pytest.raises(AllRowsDropped):
            rank([], k=5)

    def test_k_validation(self):
        with pytest.raises(InvalidArgument):
            rank([(0, 1.0)], k=0)


class TestRankingProperties:
    @given(
        st.lists(st.integers(-10**6, 10**6), min_size=2, max_size=30, unique=True),
        st.floats(0.1, 50),
    )
    @settings(max_examples=60)
    def test_positive_scaling_leaves_order_unchanged(self, ints, factor):
        # well-separated values: at the subnormal floor, scaling can underflow
        # two distinct scores onto the same float and legitimately swap ties
        values = [v / 1000 for v in ints]
        rows = "\n".join(repr(v) for v in values)
        ds = load_csv(f"a\n{rows}".encode())
        base = rank(compute_scores(ds, ScoringSpec({"a": 1.0})), k=2)
        scaled = rank(compute_scores(ds, ScoringSpec({"a": factor})), k=2)
        assert base.order == scaled.order

    @given(st.lists(st.floats(-100, 100), min_size=1, max_size=30, unique=True))
    @settings(max_examples=60)
    def test_single_attribute_descends(self, values):
        rows = "\n".join(repr(v) for v in values)
        ds = load_csv(f"a\n{rows}".encode())
        ranking = rank(compute_scores(ds, ScoringSpec({"a": 1.0})), k=1)
        ranked_values = [values[i] for i in ranking.order]
        assert ranked_values == sorted(values, reverse=True)

    def test_determinism(self):
        rng = random.Random(5)
        rows = [(rng.uniform(0, 1), rng.uniform(0, 1)) for _ in range(50)]
        ds = load_csv(table(rows))
        spec = ScoringSpec({"a": 0.7, "b": 0.3}, "zscore")
        first = rank(compute_scores(ds, spec), k=10)
        second = rank(compute_scores(ds, spec), k=10)
        assert first == second

    def test_weight_insertion_order_irrelevant(self):
        ds = load_csv(table([(1.0, 2.0), (3.0, 1.0), (2.0, 2.5)]))
        forward = compute_scores(ds, ScoringSpec({"a": 0.3, "b": 0.7}))
        backward = compute_scores(ds, ScoringSpec({"b": 0.7, "a": 0.3}))
        assert forward == backward


class TestBuildRanking:
    def test_required_attribute_drops_rows(self):
        ds = load_csv(b"a,s\n3,x\n2,\n1,y")
        annotated, ranking = build_ranking(ds, ScoringSpec({"a": 1.0}), 10, require=["s"])
        assert annotated.dropped_rows == 1
        assert ranking.order == (0, 2)
        assert ranking.dataset_digest == ds.source_digest

    def test_all_required_missing(self):
        ds = load_csv(b"a,s\n1,\n2,")
        with pytest.raises(AllRowsDropped):
            build_ranking(ds, ScoringSpec({"a": 1.0}), 10, require=["s"])

    def test_normalization_uses_full_column(self):
        # the dropped row still anchors the min-max range
        ds = load_csv(b"a,s\n0,\n5,x\n10,y")
        _, ranking = build_ranking(
            ds, ScoringSpec({"a": 1.0}, "minmax"), 10, require=["s"]
        )
        assert ranking.scores == (1.0, 0.5)
