"""Nutritional labels for score-based rankings.

Rank tabular data with a user-designed linear scoring function and emit a
deterministic report covering the scoring recipe, the attributes that
actually drive the outcome, ranking stability, statistical parity for a
binary protected group, and category diversity.
"""

from ._version import __version__
from .dataset import (
    Column,
    ColumnStats,
    Dataset,
    Histogram,
    column_stats,
    histogram,
    load_csv,
    normalize_view,
)
from .diversity import DiversityReport, diversity_report
from .errors import RankLabelError
from .fairness import (
    FairnessConfig,
    FairnessResult,
    ProtectedFeature,
    adjust_significance,
    binomial_cdf,
    fa_ir_test,
    fair_min_table,
    fairness_suite,
    pairwise_statistic,
    pairwise_test,
    proportion_test,
)
from .insight import (
    IngredientReport,
    RecipeReport,
    StabilityResult,
    ingredients,
    recipe,
    spearman,
    stability,
    stability_slope,
)
from .label import (
    LABEL_SCHEMA,
    NutritionalLabel,
    build_label,
    label_to_dict,
    parse_label,
    render_json,
)
from .html import render_html
from .scoring import Ranking, ScoringSpec, build_ranking, compute_scores, rank

__all__ = [
    "__version__",
    "Column",
    "ColumnStats",
    "Dataset",
    "Histogram",
    "column_stats",
    "histogram",
    "load_csv",
    "normalize_view",
    "ScoringSpec",
    "Ranking",
    "compute_scores",
    "rank",
    "build_ranking",
    "RecipeReport",
    "IngredientReport",
    "StabilityResult",
    "recipe",
    "ingredients",
    "spearman",
    "stability",
    "stability_slope",
    "ProtectedFeature",
    "FairnessConfig",
    "FairnessResult",
    "binomial_cdf",
    "fair_min_table",
    "adjust_significance",
    "fa_ir_test",
    "proportion_test",
    "pairwise_statistic",
    "pairwise_test",
    "fairness_suite",
    "DiversityReport",
    "diversity_report",
    "NutritionalLabel",
    "build_label",
    "label_to_dict",
    "render_json",
    "parse_label",
    "render_html",
    "LABEL_SCHEMA",
    "RankLabelError",
]
