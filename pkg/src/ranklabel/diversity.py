"""Category proportions at top-k versus overall for the Diversity widget."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .dataset import Dataset
from .scoring import Ranking

UNKNOWN = "unknown"


@dataclass(frozen=True)
class DiversityReport:
    attribute: str
    proportions_topk: dict[str, float]
    proportions_overall: dict[str, float]


def _proportions(values: Sequence, indices: Sequence[int]) -> dict[str, float]:
    counts = Counter(UNKNOWN if values[i] is None else values[i] for i in indices)
    total = len(indices)
    return {category: counts[category] / total for category in sorted(counts)}


def diversity_report(ranking: Ranking, dataset: Dataset, attribute: str) -> DiversityReport:
    """Category frequencies over the top-k and over all retained rows.

    Missing values are reported under the reserved ``unknown`` bucket (a
    literal ``unknown`` category merges with it); zero-count categories are
    omitted, so each map sums to one.
    """
    col = dataset.categorical_column(attribute)
    return DiversityReport(
        attribute=attribute,
        proportions_topk=_proportions(col.values, ranking.top_k),
        proportions_overall=_proportions(col.values, ranking.order),
    )
