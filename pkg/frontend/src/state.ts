// Designer state and its pure transitions. Every transition returns a new
// state object computed only from (previous state, event payload), so the
// flow is unit-testable without a DOM or a server.

import type {
  ColumnDescriptor,
  DatasetDescriptor,
  LabelDocument,
  Normalization,
  PreviewRow,
  RankingRequest,
} from "./types.js";

export interface DesignerState {
  datasetId: string | null;
  datasetName: string | null;
  columns: ColumnDescriptor[];
  weights: Record<string, number>;
  normalization: Normalization;
  sensitiveAttribute: string | null;
  diversityAttributes: string[];
  k: number;
  alpha: number;
  preview: PreviewRow[] | null;
  rankingId: string | null;
  label: LabelDocument | null;
  error: string | null;
}

export function initialState(): DesignerState {
  return {
    datasetId: null,
    datasetName: null,
    columns: [],
    weights: {},
    normalization: "none",
    sensitiveAttribute: null,
    diversityAttributes: [],
    k: 10,
    alpha: 0.05,
    preview: null,
    rankingId: null,
    label: null,
    error: null,
  };
}

export function selectDataset(
  state: DesignerState,
  descriptor: DatasetDescriptor,
): DesignerState {
  // switching datasets resets the whole design
  return {
    ...initialState(),
    datasetId: descriptor.dataset_id,
    datasetName: descriptor.name,
    columns: descriptor.columns,
  };
}

export function numericColumns(state: DesignerState): ColumnDescriptor[] {
  return state.columns.filter((c) => c.kind === "numeric");
}

export function binaryCategoricalColumns(state: DesignerState): ColumnDescriptor[] {
  return state.columns.filter((c) => c.kind === "categorical" && c.distinct === 2);
}

export function categoricalColumns(state: DesignerState): ColumnDescriptor[] {
  return state.columns.filter((c) => c.kind === "categorical");
}

function invalidatePreview(state: DesignerState): DesignerState {
  return { ...state, preview: null, rankingId: null, label: null, error: null };
}

export function setWeight(
  state: DesignerState,
  attribute: string,
  weight: number,
): DesignerState {
  if (!state.columns.some((c) => c.name === attribute && c.kind === "numeric")) {
    return { ...state, error: `attribute ${attribute} is not numeric` };
  }
  return invalidatePreview({
    ...state,
    weights: { ...state.weights, [attribute]: weight },
  });
}

export function clearWeight(state: DesignerState, attribute: string): DesignerState {
  const weights = { ...state.weights };
  delete weights[attribute];
  return invalidatePreview({ ...state, weights });
}

export function setNormalization(
  state: DesignerState,
  normalization: Normalization,
): DesignerState {
  return invalidatePreview({ ...state, normalization });
}

export function setSensitive(state: DesignerState, attribute: string | null): DesignerState {
  if (
    attribute !== null &&
    !binaryCategoricalColumns(state).some((c) => c.name === attribute)
  ) {
    return { ...state, error: `attribute ${attribute} is not binary categorical` };
  }
  return invalidatePreview({ ...state, sensitiveAttribute: attribute });
}

export function toggleDiversity(state: DesignerState, attribute: string): DesignerState {
  const current = state.diversityAttributes;
  const next = current.includes(attribute)
    ? current.filter((a) => a !== attribute)
    : [...current, attribute];
  return invalidatePreview({ ...state, diversityAttributes: next });
}

export function setK(state: DesignerState, k: number): DesignerState {
  if (!Number.isInteger(k) || k < 1) {
    return { ...state, error: "k must be a positive integer" };
  }
  return invalidatePreview({ ...state, k });
}

export function setAlpha(state: DesignerState, alpha: number): DesignerState {
  if (!(alpha > 0 && alpha < 1)) {
    return { ...state, error: "alpha must be in (0, 1)" };
  }
  return invalidatePreview({ ...state, alpha });
}

export function applyPreview(
  state: DesignerState,
  rankingId: string,
  preview: PreviewRow[],
): DesignerState {
  return { ...state, rankingId, preview, error: null };
}

export function applyLabel(state: DesignerState, label: LabelDocument): DesignerState {
  return { ...state, label, error: null };
}

export function setError(state: DesignerState, message: string): DesignerState {
  return { ...state, error: message };
}

/** Mirror of the server-side validation: scoring needs at least one nonzero
 * weight, previews additionally need a binary sensitive attribute. */
export function hasScoringFunction(state: DesignerState): boolean {
  return Object.values(state.weights).some((w) => w !== 0);
}

export function canPreview(state: DesignerState): boolean {
  return (
    state.datasetId !== null && hasScoringFunction(state) && state.sensitiveAttribute !== null
  );
}

export function canGenerateLabel(state: DesignerState): boolean {
  return canPreview(state) && state.rankingId !== null;
}

export function toRankingRequest(state: DesignerState): RankingRequest {
  if (!canPreview(state) || state.sensitiveAttribute === null) {
    throw new Error("state is not ready for a ranking request");
  }
  return {
    weights: { ...state.weights },
    normalization: state.normalization,
    sensitive_attribute: state.sensitiveAttribute,
    diversity_attributes: [...state.diversityAttributes],
    k: state.k,
    alpha: state.alpha,
  };
}
