"""Recipe, Ingredients and Stability widgets.

Recipe restates the designer's intent (weights and their shares); Ingredients
measures which numeric attributes actually move the ranked outcome, via rank
correlation with the scores; Stability fits a least-squares line to the
normalized score distribution and flags rankings whose adjacent scores are
too close to be trustworthy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dataset import ColumnStats, Dataset, column_stats, normalize_view
from .errors import (
    EmptyColumn,
    InsufficientData,
    InvalidArgument,
    UndefinedCorrelation,
)
from .scoring import Ranking

STABILITY_THRESHOLD = 0.25
STRENGTH_THRESHOLD = 0.5


@dataclass(frozen=True)
class RecipeEntry:
    attribute: str
    weight: float
    share: float
    stats_topk: ColumnStats
    stats_overall: ColumnStats


@dataclass(frozen=True)
class RecipeReport:
    entries: tuple[RecipeEntry, ...]


@dataclass(frozen=True)
class IngredientEntry:
    attribute: str
    importance: float
    correlation: float
    strong: bool
    stats_topk: ColumnStats
    stats_overall: ColumnStats


@dataclass(frozen=True)
class IngredientReport:
    entries: tuple[IngredientEntry, ...]
    strength_threshold: float


@dataclass(frozen=True)
class StabilityResult:
    slope_topk: float
    slope_overall: float
    stable_topk: bool
    stable_overall: bool
    threshold: float


def _fractional_ranks(values: list[float]) -> list[float]:
    """1-based ranks; ties get the average of the ranks they span."""
    order = sorted(range(len(values)), key=values.__getitem__)
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        avg = (i + j) / 2 + 1
        for idx in order[i : j + 1]:
            ranks[idx] = avg
        i = j + 1
    return ranks


def spearman(x: list[float], y: list[float]) -> float:
    """Spearman rank correlation with average ranks for ties.

    Raises UndefinedCorrelation when either input is constant.
    """
    if len(x) != len(y):
        raise InvalidArgument("inputs must have equal length")
    if len(x) < 2:
        raise InvalidArgument("need at least two observations")
    rx = _fractional_ranks(x)
    ry = _fractional_ranks(y)
    n = len(x)
    mx = math.fsum(rx) / n
    my = math.fsum(ry) / n
    cov = math.fsum((a - mx) * (b - my) for a, b in zip(rx, ry))
    vx = math.fsum((a - mx) ** 2 for a in rx)
    vy = math.fsum((b - my) ** 2 for b in ry)
    if vx == 0.0 or vy == 0.0:
        raise UndefinedCorrelation("constant input")
    return cov / math.sqrt(vx * vy)


def recipe(dataset: Dataset, ranking: Ranking) -> RecipeReport:
    """One entry per weighted attribute: weight, |w| share, and the attribute's
    stats (as used for scoring, i.e. post-normalization) at top-k and overall.
    """
    spec = ranking.spec
    if spec is None:
        raise InvalidArgument("ranking carries no scoring spec")
    total = math.fsum(abs(w) for w in spec.weights.values())
    view = normalize_view(dataset, sorted(spec.weights), spec.normalization)
    retained = list(ranking.order)
    topk = list(ranking.top_k)
    entries = []
    for name in sorted(spec.weights):
        w = spec.weights[name]
        entries.append(
            RecipeEntry(
                attribute=name,
                weight=w,
                share=abs(w) / total,
                stats_topk=column_stats(view, name, topk),
                stats_overall=column_stats(view, name, retained),
            )
        )
    entries.sort(key=lambda e: (-e.share, e.attribute))
    return RecipeReport(tuple(entries))


def ingredients(
    dataset: Dataset,
    ranking: Ranking,
    strength_threshold: float = STRENGTH_THRESHOLD,
) -> IngredientReport:
    """Rank every numeric attribute by |Spearman correlation| with the scores.

    Correlations are computed over retained rows, pairing each row's raw
    attribute value with its score and skipping rows where the attribute is
    missing. Constant or correlation-undefined attributes get importance 0;
    attributes with no usable values at either scope are omitted.
    """
    retained = list(ranking.order)
    topk = list(ranking.top_k)
    entries = []
    for col in dataset.columns:
        if col.kind != "numeric":
            continue
        try:
            stats_topk = column_stats(dataset, col.name, topk)
            stats_overall = column_stats(dataset, col.name, retained)
        except EmptyColumn:
            continue
        pairs = [
            (col.values[i], s)
            for i, s in zip(ranking.order, ranking.scores)
            if col.values[i] is not None
        ]
        try:
            if len(pairs) < 2:
                raise UndefinedCorrelation("fewer than two paired values")
            rho = spearman([v for v, _ in pairs], [s for _, s in pairs])
        except UndefinedCorrelation:
            rho = 0.0
        importance = abs(rho)
        entries.append(
            IngredientEntry(
                attribute=col.name,
                importance=importance,
                correlation=rho,
                strong=importance >= strength_threshold,
                stats_topk=stats_topk,
                stats_overall=stats_overall,
            )
        )
    entries.sort(key=lambda e: (-e.importance, e.attribute))
    return IngredientReport(tuple(entries), strength_threshold)


def stability_slope(scores: list[float], dataset_min: float, dataset_max: float) -> float:
    """OLS slope of the score distribution in normalized coordinates.

    Scores are min-max normalized with the dataset-wide score range (constant
    ranges map every point to 0.5); positions map to x = (i-1)/(m-1). A
    descending distribution yields a negative slope.
    """
    m = len(scores)
    if m < 2:
        raise InsufficientData("need at least two scores to fit a slope")
    if dataset_max == dataset_min:
        y = [0.5] * m
    else:
        span = dataset_max - dataset_min
        y = [(s - dataset_min) / span for s in scores]
    xs = [i / (m - 1) for i in range(m)]
    mean_x = math.fsum(xs) / m
    mean_y = math.fsum(y) / m
    sxy = math.fsum((a - mean_x) * (b - mean_y) for a, b in zip(xs, y))
    sxx = math.fsum((a - mean_x) ** 2 for a in xs)
    return sxy / sxx


def stability(ranking: Ranking, threshold: float = STABILITY_THRESHOLD) -> StabilityResult:
    """Slopes at top-k and overall; |slope| at or below the threshold is unstable."""
    scores = list(ranking.scores)
    if len(scores) < 2 or ranking.k < 2:
        raise InsufficientData("stability needs at least two scores at each scope")
    hi, lo = scores[0], scores[-1]
    slope_topk = stability_slope(scores[: ranking.k], lo, hi)
    slope_overall = stability_slope(scores, lo, hi)
    return StabilityResult(
        slope_topk=slope_topk,
        slope_overall=slope_overall,
        stable_topk=abs(slope_topk) > threshold,
        stable_overall=abs(slope_overall) > threshold,
        threshold=threshold,
    )
