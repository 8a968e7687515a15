"""Assemble widget results into a nutritional label and serialize it.

The JSON document is the system of record: fixed key order, shortest
round-trip float formatting, no timestamps, so identical inputs produce
byte-identical output. The HTML renderer in :mod:`ranklabel.html` is a
view over this document and never computes numbers of its own.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Sequence

from ._version import __version__
from .dataset import ColumnStats, Dataset
from .diversity import DiversityReport, diversity_report
from .errors import InvalidArgument, RankLabelError, WidgetError
from .fairness import FairnessConfig, FairnessResult, ProtectedFeature, fairness_suite
from .insight import (
    STABILITY_THRESHOLD,
    STRENGTH_THRESHOLD,
    IngredientEntry,
    IngredientReport,
    RecipeEntry,
    RecipeReport,
    StabilityResult,
    ingredients,
    recipe,
    stability,
)
from .scoring import Ranking

SCHEMA_VERSION = "1.0"


@dataclass(frozen=True)
class NutritionalLabel:
    recipe: RecipeReport
    ingredients: IngredientReport
    stability: StabilityResult
    fairness: tuple[FairnessResult, ...]
    diversity: tuple[DiversityReport, ...]
    metadata: dict


def build_label(
    dataset: Dataset,
    ranking: Ranking,
    sensitive: str,
    diversity_attrs: Sequence[str] = (),
    config: FairnessConfig | None = None,
    *,
    strength_threshold: float = STRENGTH_THRESHOLD,
    stability_threshold: float = STABILITY_THRESHOLD,
) -> NutritionalLabel:
    """Run every widget and collect the results plus provenance metadata.

    The ranking's k governs all widgets. Diversity always covers the
    sensitive attribute, then any extra requested attributes. Errors from a
    widget are re-raised as WidgetError naming the widget.
    """
    if ranking.dataset_digest != dataset.source_digest:
        raise InvalidArgument("ranking was not derived from this dataset")
    config = config or FairnessConfig()
    config = replace(config, k=ranking.k)

    def run(widget: str, fn, *args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except RankLabelError as e:
            raise WidgetError(widget, e) from e

    recipe_report = run("recipe", recipe, dataset, ranking)
    ingredient_report = run(
        "ingredients", ingredients, dataset, ranking, strength_threshold
    )
    stability_result = run("stability", stability, ranking, stability_threshold)
    fairness_results = run(
        "fairness", fairness_suite, ranking, dataset, sensitive, config
    )
    attrs = [sensitive] + [a for a in diversity_attrs if a != sensitive]
    diversity_reports = [
        run("diversity", diversity_report, ranking, dataset, attr) for attr in attrs
    ]

    spec = ranking.spec
    metadata = {
        "dataset_digest": dataset.source_digest,
        "row_count": dataset.row_count,
        "dropped_rows": dataset.dropped_rows,
        "k": ranking.k,
        "alpha": config.alpha,
        "normalization": spec.normalization if spec else "none",
        "weights": dict(sorted(spec.weights.items())) if spec else {},
        "sensitive_attribute": sensitive,
        "diversity_attributes": attrs,
        "strength_threshold": strength_threshold,
        "stability_threshold": stability_threshold,
        "engine_version": __version__,
        "methodology": {
            "ingredients": (
                "importance is the absolute Spearman rank correlation between "
                "each numeric attribute and the scores over retained rows; "
                f"strong at or above {strength_threshold}"
            ),
            "stability": (
                "ordinary least-squares slope of scores (min-max normalized by "
                "the overall score range) against rank positions normalized to "
                "[0, 1] within each segment; unstable when |slope| <= "
                f"{stability_threshold}"
            ),
            "missing_values": (
                "rows missing a weighted or sensitive attribute are dropped "
                "before ranking and counted in dropped_rows"
            ),
            "per_attribute_stability": "unavailable",
        },
    }
    if config.p is not None:
        metadata["p_override"] = config.p
    return NutritionalLabel(
        recipe=recipe_report,
        ingredients=ingredient_report,
        stability=stability_result,
        fairness=tuple(fairness_results),
        diversity=tuple(diversity_reports),
        metadata=metadata,
    )


def _stats_dict(stats: ColumnStats) -> dict:
    return {
        "minimum": stats.minimum,
        "maximum": stats.maximum,
        "median": stats.median,
        "count": stats.count,
        "missing": stats.missing,
    }


def _fairness_dict(result: FairnessResult) -> dict:
    out = {
        "measure": result.measure,
        "protected_attribute": result.feature.attribute,
        "protected_value": result.feature.protected_value,
        "statistic": result.statistic,
    }
    if result.p_value is not None:
        out["p_value"] = result.p_value
    out["fair"] = result.fair
    out["direction"] = result.direction
    out["details"] = result.details
    return out


def label_to_dict(label: NutritionalLabel) -> dict:
    """Plain-dict form of the label, in canonical key order."""
    return {
        "label_schema": SCHEMA_VERSION,
        "metadata": label.metadata,
        "recipe": {
            "entries": [
                {
                    "attribute": e.attribute,
                    "weight": e.weight,
                    "share": e.share,
                    "stats_topk": _stats_dict(e.stats_topk),
                    "stats_overall": _stats_dict(e.stats_overall),
                }
                for e in label.recipe.entries
            ]
        },
        "ingredients": {
            "entries": [
                {
                    "attribute": e.attribute,
                    "importance": e.importance,
                    "correlation": e.correlation,
                    "strong": e.strong,
                    "stats_topk": _stats_dict(e.stats_topk),
                    "stats_overall": _stats_dict(e.stats_overall),
                }
                for e in label.ingredients.entries
            ]
        },
        "stability": {
            "slope_topk": label.stability.slope_topk,
            "slope_overall": label.stability.slope_overall,
            "stable_topk": label.stability.stable_topk,
            "stable_overall": label.stability.stable_overall,
            "threshold": label.stability.threshold,
        },
        "fairness": [_fairness_dict(r) for r in label.fairness],
        "diversity": [
            {
                "attribute": d.attribute,
                "topk": d.proportions_topk,
                "overall": d.proportions_overall,
            }
            for d in label.diversity
        ],
    }


def render_json(label: NutritionalLabel) -> bytes:
    """Canonical JSON bytes; identical labels serialize byte-identically."""
    return (
        json.dumps(label_to_dict(label), indent=2, allow_nan=False) + "\n"
    ).encode("utf-8")


def _parse_stats(data: dict) -> ColumnStats:
    return ColumnStats(
        minimum=data["minimum"],
        maximum=data["maximum"],
        median=data["median"],
        count=data["count"],
        missing=data["missing"],
    )


def parse_label(data: bytes) -> NutritionalLabel:
    """Inverse of render_json."""
    doc = json.loads(data.decode("utf-8"))
    if doc.get("label_schema") != SCHEMA_VERSION:
        raise InvalidArgument(
            f"unsupported label schema {doc.get('label_schema')!r}"
        )
    metadata = doc["metadata"]
    recipe_report = RecipeReport(
        tuple(
            RecipeEntry(
                attribute=e["attribute"],
                weight=e["weight"],
                share=e["share"],
                stats_topk=_parse_stats(e["stats_topk"]),
                stats_overall=_parse_stats(e["stats_overall"]),
            )
            for e in doc["recipe"]["entries"]
        )
    )
    ingredient_report = IngredientReport(
        tuple(
            IngredientEntry(
                attribute=e["attribute"],
                importance=e["importance"],
                correlation=e["correlation"],
                strong=e["strong"],
                stats_topk=_parse_stats(e["stats_topk"]),
                stats_overall=_parse_stats(e["stats_overall"]),
            )
            for e in doc["ingredients"]["entries"]
        ),
        strength_threshold=metadata["strength_threshold"],
    )
    stability_result = StabilityResult(
        slope_topk=doc["stability"]["slope_topk"],
        slope_overall=doc["stability"]["slope_overall"],
        stable_topk=doc["stability"]["stable_topk"],
        stable_overall=doc["stability"]["stable_overall"],
        threshold=doc["stability"]["threshold"],
    )
    fairness_results = tuple(
        FairnessResult(
            measure=r["measure"],
            feature=ProtectedFeature(r["protected_attribute"], r["protected_value"]),
            statistic=r["statistic"],
            p_value=r.get("p_value"),
            fair=r["fair"],
            direction=r["direction"],
            details=r["details"],
        )
        for r in doc["fairness"]
    )
    diversity_reports = tuple(
        DiversityReport(
            attribute=d["attribute"],
            proportions_topk=d["topk"],
            proportions_overall=d["overall"],
        )
        for d in doc["diversity"]
    )
    return NutritionalLabel(
        recipe=recipe_report,
        ingredients=ingredient_report,
        stability=stability_result,
        fairness=fairness_results,
        diversity=diversity_reports,
        metadata=metadata,
    )


_STATS_SCHEMA = {
    "type": "object",
    "required": ["minimum", "maximum", "median", "count", "missing"],
    "properties": {
        "minimum": {"type": "number"},
        "maximum": {"type": "number"},
        "median": {"type": "number"},
        "count": {"type": "integer", "minimum": 0},
        "missing": {"type": "integer", "minimum": 0},
    },
    "additionalProperties": False,
}

_PROPORTIONS_SCHEMA = {
    "type": "object",
    "additionalProperties": {"type": "number", "minimum": 0, "maximum": 1},
}

LABEL_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": [
        "label_schema",
        "metadata",
        "recipe",
        "ingredients",
        "stability",
        "fairness",
        "diversity",
    ],
    "properties": {
        "label_schema": {"const": SCHEMA_VERSION},
        "metadata": {
            "type": "object",
            "required": [
                "dataset_digest",
                "row_count",
                "dropped_rows",
                "k",
                "alpha",
                "normalization",
                "weights",
                "sensitive_attribute",
                "diversity_attributes",
                "strength_threshold",
                "stability_threshold",
                "engine_version",
                "methodology",
            ],
            "properties": {
                "dataset_digest": {"type": "string"},
                "row_count": {"type": "integer", "minimum": 0},
                "dropped_rows": {"type": "integer", "minimum": 0},
                "k": {"type": "integer", "minimum": 1},
                "alpha": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
                "p_override": {
                    "type": "number",
                    "exclusiveMinimum": 0,
                    "exclusiveMaximum": 1,
                },
                "normalization": {"enum": ["none", "minmax", "zscore"]},
                "weights": {"type": "object", "additionalProperties": {"type": "number"}},
                "sensitive_attribute": {"type": "string"},
                "diversity_attributes": {"type": "array", "items": {"type": "string"}},
                "strength_threshold": {"type": "number"},
                "stability_threshold": {"type": "number"},
                "engine_version": {"type": "string"},
                "methodology": {
                    "type": "object",
                    "additionalProperties": {"type": "string"},
                },
            },
            "additionalProperties": False,
        },
        "recipe": {
            "type": "object",
            "required": ["entries"],
            "properties": {
                "entries": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": [
                            "attribute",
                            "weight",
                            "share",
                            "stats_topk",
                            "stats_overall",
                        ],
                        "properties": {
                            "attribute": {"type": "string"},
                            "weight": {"type": "number"},
                            "share": {"type": "number", "minimum": 0, "maximum": 1},
                            "stats_topk": _STATS_SCHEMA,
                            "stats_overall": _STATS_SCHEMA,
                        },
                        "additionalProperties": False,
                    },
                }
            },
            "additionalProperties": False,
        },
        "ingredients": {
            "type": "object",
            "required": ["entries"],
            "properties": {
                "entries": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": [
                            "attribute",
                            "importance",
                            "correlation",
                            "strong",
                            "stats_topk",
                            "stats_overall",
                        ],
                        "properties": {
                            "attribute": {"type": "string"},
                            "importance": {"type": "number", "minimum": 0, "maximum": 1},
                            "correlation": {"type": "number", "minimum": -1, "maximum": 1},
                            "strong": {"type": "boolean"},
                            "stats_topk": _STATS_SCHEMA,
                            "stats_overall": _STATS_SCHEMA,
                        },
                        "additionalProperties": False,
                    },
                }
            },
            "additionalProperties": False,
        },
        "stability": {
            "type": "object",
            "required": [
                "slope_topk",
                "slope_overall",
                "stable_topk",
                "stable_overall",
                "threshold",
            ],
            "properties": {
                "slope_topk": {"type": "number"},
                "slope_overall": {"type": "number"},
                "stable_topk": {"type": "boolean"},
                "stable_overall": {"type": "boolean"},
                "threshold": {"type": "number"},
            },
            "additionalProperties": False,
        },
        "fairness": {
            "type": "array",
            "items": {
                "type": "object",
                "required": [
                    "measure",
                    "protected_attribute",
                    "protected_value",
                    "statistic",
                    "fair",
                    "direction",
                    "details",
                ],
                "properties": {
                    "measure": {"enum": ["fa_ir", "proportion", "pairwise"]},
                    "protected_attribute": {"type": "string"},
                    "protected_value": {"type": "string"},
                    "statistic": {"type": "number"},
                    "p_value": {"type": "number", "minimum": 0, "maximum": 1},
                    "fair": {"type": "boolean"},
                    "direction": {"enum": ["under", "over", "none"]},
                    "details": {"type": "object"},
                },
                "additionalProperties": False,
            },
        },
        "diversity": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["attribute", "topk", "overall"],
                "properties": {
                    "attribute": {"type": "string"},
                    "topk": _PROPORTIONS_SCHEMA,
                    "overall": _PROPORTIONS_SCHEMA,
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}
