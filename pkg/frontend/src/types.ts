// Payload shapes of the ranklabel HTTP API. The UI never computes statistics:
// every number it shows comes verbatim from one of these documents.

export type ColumnKind = "numeric" | "categorical";
export type Normalization = "none" | "minmax" | "zscore";

export interface ColumnStats {
  minimum: number;
  maximum: number;
  median: number;
}

export interface ColumnDescriptor {
  name: string;
  kind: ColumnKind;
  count: number;
  missing: number;
  stats?: ColumnStats;
  distinct?: number;
}

export interface DatasetDescriptor {
  dataset_id: string;
  name: string | null;
  row_count: number;
  columns: ColumnDescriptor[];
}

export interface DatasetListing {
  dataset_id: string;
  name: string;
  row_count: number;
}

export interface HistogramResponse {
  attribute: string;
  bin_edges: number[];
  counts: number[];
}

export interface RankingRequest {
  weights: Record<string, number>;
  normalization: Normalization;
  sensitive_attribute: string;
  diversity_attributes: string[];
  k: number;
  alpha: number;
  p?: number;
}

export interface PreviewRow {
  rank: number;
  row_index: number;
  score: number;
  values: Record<string, number | string | null>;
}

export interface RankingResponse {
  ranking_id: string;
  preview: PreviewRow[];
}

export interface ApiError {
  error: string;
  message: string;
  fields?: Record<string, string>;
}

export interface WidgetStats {
  minimum: number;
  maximum: number;
  median: number;
  count: number;
  missing: number;
}

export interface RecipeEntry {
  attribute: string;
  weight: number;
  share: number;
  stats_topk: WidgetStats;
  stats_overall: WidgetStats;
}

export interface IngredientEntry {
  attribute: string;
  importance: number;
  correlation: number;
  strong: boolean;
  stats_topk: WidgetStats;
  stats_overall: WidgetStats;
}

export interface StabilitySection {
  slope_topk: number;
  slope_overall: number;
  stable_topk: boolean;
  stable_overall: boolean;
  threshold: number;
}

export interface FairnessResult {
  measure: "fa_ir" | "proportion" | "pairwise";
  protected_attribute: string;
  protected_value: string;
  statistic: number;
  p_value?: number;
  fair: boolean;
  direction: "under" | "over" | "none";
  details: Record<string, unknown>;
}

export interface DiversitySection {
  attribute: string;
  topk: Record<string, number>;
  overall: Record<string, number>;
}

export interface LabelMetadata {
  dataset_digest: string;
  row_count: number;
  dropped_rows: number;
  k: number;
  alpha: number;
  p_override?: number;
  normalization: Normalization;
  weights: Record<string, number>;
  sensitive_attribute: string;
  diversity_attributes: string[];
  strength_threshold: number;
  stability_threshold: number;
  engine_version: string;
  methodology: Record<string, string>;
}

export interface LabelDocument {
  label_schema: string;
  metadata: LabelMetadata;
  recipe: { entries: RecipeEntry[] };
  ingredients: { entries: IngredientEntry[] };
  stability: StabilitySection;
  fairness: FairnessResult[];
  diversity: DiversitySection[];
}

export const SUPPORTED_LABEL_SCHEMA = "1.0";
