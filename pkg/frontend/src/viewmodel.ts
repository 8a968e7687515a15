// Label JSON -> widget view models. Values are passed through verbatim (the
// UI performs no statistical computation); `fmt` renders a number with the
// same shortest round-trip representation the JSON itself uses.

import { pieSlices, slopeGauge, type GaugeGeometry, type PieSlice } from "./charts.js";
import type { LabelDocument, WidgetStats } from "./types.js";
import { SUPPORTED_LABEL_SCHEMA } from "./types.js";

export function fmt(value: number): string {
  return String(value);
}

export interface StatsRowView {
  attribute: string;
  scope: "top-k" | "overall";
  minimum: number;
  maximum: number;
  median: number;
  count: number;
  missing: number;
}

function statsRows(attribute: string, topk: WidgetStats, overall: WidgetStats): StatsRowView[] {
  return [
    { attribute, scope: "top-k", ...topk },
    { attribute, scope: "overall", ...overall },
  ];
}

export interface RecipeRowView {
  attribute: string;
  weight: number;
  share: number;
}

export interface IngredientRowView {
  attribute: string;
  importance: number;
  correlation: number;
  strong: boolean;
}

export interface FairnessRowView {
  measure: string;
  feature: string;
  protectedValue: string;
  fair: boolean;
  verdict: "fair" | "unfair";
  statistic: number;
  pValue: number | null;
  direction: string;
  detailFields: [string, string][];
}

export interface DiversityChartView {
  attribute: string;
  scope: "top-k" | "overall";
  slices: PieSlice[];
}

export interface StabilityRowView {
  scope: "top-k" | "overall";
  slope: number;
  stable: boolean;
  gauge: GaugeGeometry;
}

export interface LabelView {
  schemaOk: boolean;
  schemaVersion: string;
  recipe: { rows: RecipeRowView[]; stats: StatsRowView[] };
  ingredients: { rows: IngredientRowView[]; stats: StatsRowView[] };
  stability: { rows: StabilityRowView[]; threshold: number };
  fairness: { rows: FairnessRowView[]; anyUnfair: boolean; alpha: number };
  diversity: DiversityChartView[];
  metadata: [string, string][];
}

function detailValue(value: unknown): string {
  if (value === null) return "-";
  if (Array.isArray(value)) return value.map((v) => String(v)).join(", ");
  if (typeof value === "boolean") return value ? "yes" : "no";
  return String(value);
}

export function buildLabelView(doc: LabelDocument): LabelView {
  const stability = doc.stability;
  const fairnessRows: FairnessRowView[] = doc.fairness.map((r) => ({
    measure: r.measure,
    feature: `${r.protected_attribute} = ${r.protected_value}`,
    protectedValue: r.protected_value,
    fair: r.fair,
    verdict: r.fair ? "fair" : "unfair",
    statistic: r.statistic,
    pValue: r.p_value ?? null,
    direction: r.direction,
    detailFields: Object.entries(r.details)
      .sort(([a], [b]) => a.localeCompare(b))
      .map(([key, value]) => [key, detailValue(value)] as [string, string]),
  }));

  const diversity: DiversityChartView[] = [];
  for (const section of doc.diversity) {
    diversity.push({
      attribute: section.attribute,
      scope: "top-k",
      slices: pieSlices(section.topk),
    });
    diversity.push({
      attribute: section.attribute,
      scope: "overall",
      slices: pieSlices(section.overall),
    });
  }

  const meta = doc.metadata;
  const metadata: [string, string][] = [
    ["dataset digest", meta.dataset_digest],
    ["rows", fmt(meta.row_count)],
    ["dropped rows", fmt(meta.dropped_rows)],
    ["k", fmt(meta.k)],
    ["alpha", fmt(meta.alpha)],
    ["normalization", meta.normalization],
    ["sensitive attribute", meta.sensitive_attribute],
    ["engine version", meta.engine_version],
  ];
  if (meta.p_override !== undefined) {
    metadata.push(["p override", fmt(meta.p_override)]);
  }
  for (const [key, text] of Object.entries(meta.methodology)) {
    metadata.push([`methodology: ${key}`, text]);
  }

  return {
    schemaOk: doc.label_schema === SUPPORTED_LABEL_SCHEMA,
    schemaVersion: doc.label_schema,
    recipe: {
      rows: doc.recipe.entries.map((e) => ({
        attribute: e.attribute,
        weight: e.weight,
        share: e.share,
      })),
      stats: doc.recipe.entries.flatMap((e) =>
        statsRows(e.attribute, e.stats_topk, e.stats_overall),
      ),
    },
    ingredients: {
      rows: doc.ingredients.entries.map((e) => ({
        attribute: e.attribute,
        importance: e.importance,
        correlation: e.correlation,
        strong: e.strong,
      })),
      stats: doc.ingredients.entries.flatMap((e) =>
        statsRows(e.attribute, e.stats_topk, e.stats_overall),
      ),
    },
    stability: {
      rows: [
        {
          scope: "top-k",
          slope: stability.slope_topk,
          stable: stability.stable_topk,
          gauge: slopeGauge(stability.slope_topk, stability.threshold, stability.stable_topk),
        },
        {
          scope: "overall",
          slope: stability.slope_overall,
          stable: stability.stable_overall,
          gauge: slopeGauge(
            stability.slope_overall,
            stability.threshold,
            stability.stable_overall,
          ),
        },
      ],
      threshold: stability.threshold,
    },
    fairness: {
      rows: fairnessRows,
      anyUnfair: fairnessRows.some((r) => !r.fair),
      alpha: meta.alpha,
    },
    diversity,
    metadata,
  };
}

/** Every number the label view will put on screen, for traceability checks. */
export function viewNumbers(view: LabelView): number[] {
  const out: number[] = [];
  for (const row of view.recipe.rows) out.push(row.weight, row.share);
  for (const row of view.ingredients.rows) out.push(row.importance, row.correlation);
  for (const rows of [view.recipe.stats, view.ingredients.stats]) {
    for (const s of rows) out.push(s.minimum, s.maximum, s.median, s.count, s.missing);
  }
  for (const row of view.stability.rows) out.push(row.slope);
  out.push(view.stability.threshold);
  for (const row of view.fairness.rows) {
    out.push(row.statistic);
    if (row.pValue !== null) out.push(row.pValue);
  }
  out.push(view.fairness.alpha);
  for (const chart of view.diversity) {
    for (const slice of chart.slices) out.push(slice.fraction);
  }
  return out;
}
