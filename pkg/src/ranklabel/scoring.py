"""Linear scoring functions and deterministic rankings.

A score is the weighted sum of (optionally normalized) numeric attributes;
higher score means better rank. Attributes where smaller is better take a
negative weight. Ties are broken by ascending original row index so a given
(dataset, spec) pair always yields the same ranking.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .dataset import Dataset, normalize_view, NORMALIZATION_MODES
from .errors import AllRowsDropped, InvalidArgument

DEFAULT_K = 10


@dataclass(frozen=True)
class ScoringSpec:
    """Per-attribute weights plus the normalization applied before scoring."""

    weights: Mapping[str, float]
    normalization: str = "none"

    def __post_init__(self):
        if self.normalization not in NORMALIZATION_MODES:
            raise InvalidArgument(f"unknown normalization mode {self.normalization!r}")
        if not self.weights:
            raise InvalidArgument("scoring spec needs at least one attribute")
        if all(w == 0 for w in self.weights.values()):
            raise InvalidArgument("scoring spec needs at least one nonzero weight")

    def validate(self, dataset: Dataset) -> None:
        """Check every weighted attribute exists and is numeric."""
        for name in self.weights:
            dataset.numeric_column(name)


@dataclass(frozen=True)
class Ranking:
    """Total order over the retained rows, best first."""

    order: tuple[int, ...]
    scores: tuple[float, ...]
    k: int
    spec: ScoringSpec | None
    dataset_digest: str

    def __post_init__(self):
        if len(self.order) != len(self.scores):
            raise InvalidArgument("order and scores must align")
        if not 1 <= self.k <= len(self.order):
            raise InvalidArgument("k must be in [1, retained rows]")
        if any(a < b for a, b in zip(self.scores, self.scores[1:])):
            raise InvalidArgument("scores must be nonincreasing along the order")

    def __len__(self) -> int:
        return len(self.order)

    @property
    def top_k(self) -> tuple[int, ...]:
        return self.order[: self.k]


def compute_scores(dataset: Dataset, spec: ScoringSpec) -> list[tuple[int, float]]:
    """Score every row that has all weighted attributes present.

    Returns (row index, score) pairs in original row order; rows missing any
    weighted attribute are excluded. Attributes are summed in sorted-name
    order so identical weight maps always produce bit-identical scores.
    """
    spec.validate(dataset)
    names = sorted(spec.weights)
    view = normalize_view(dataset, names, spec.normalization)
    columns = [(view.column(n).values, spec.weights[n]) for n in names]
    scored = []
    for i in range(dataset.row_count):
        score = 0.0
        for values, weight in columns:
            v = values[i]
            if v is None:
                break
            score += weight * v
        else:
            scored.append((i, score))
    if not scored:
        raise AllRowsDropped("every row is missing a weighted attribute")
    return scored


def rank(
    scored: Sequence[tuple[int, float]],
    k: int = DEFAULT_K,
    *,
    spec: ScoringSpec | None = None,
    dataset_digest: str = "",
) -> Ranking:
    """Sort by score descending, ties by ascending row index; clamp k."""
    if not scored:
        raise AllRowsDropped("nothing to rank")
    if k < 1:
        raise InvalidArgument("k must be >= 1")
    ordered = sorted(scored, key=lambda pair: (-pair[1], pair[0]))
    return Ranking(
        order=tuple(i for i, _ in ordered),
        scores=tuple(s for _, s in ordered),
        k=min(k, len(ordered)),
        spec=spec,
        dataset_digest=dataset_digest,
    )


def build_ranking(
    dataset: Dataset,
    spec: ScoringSpec,
    k: int = DEFAULT_K,
    require: Sequence[str] = (),
) -> tuple[Dataset, Ranking]:
    """Score and rank, dropping rows missing any weighted or required attribute.

    ``require`` typically names the sensitive attribute, so every ranked row
    carries a group value. Returns the dataset annotated with the drop count
    plus the ranking (normalization statistics are computed dataset-wide,
    before any row is dropped).
    """
    scored = compute_scores(dataset, spec)
    for name in require:
        values = dataset.column(name).values
        scored = [(i, s) for i, s in scored if values[i] is not None]
    if not scored:
        raise AllRowsDropped("every row is missing a required attribute")
    ranking = rank(scored, k, spec=spec, dataset_digest=dataset.source_digest)
    return dataset.with_dropped_rows(dataset.row_count - len(scored)), ranking
