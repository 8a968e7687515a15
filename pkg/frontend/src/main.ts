// Application wiring: one mutable state slot, API calls on user events,
// re-render after every transition. At most one preview request is in
// flight; changing the design aborts the superseded request.

import { ApiRequestError, Client } from "./api.js";
import * as state from "./state.js";
import type { DesignerState } from "./state.js";
import {
  renderDatasetList,
  renderDesignControls,
  renderError,
  renderHistogram,
  renderLabel,
  renderPreview,
  renderSchemaTable,
} from "./render.js";
import { buildLabelView } from "./viewmodel.js";

const client = new Client("");
let current: DesignerState = state.initialState();
let previewController: AbortController | null = null;

function $(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing element #${id}`);
  return node;
}

function describeError(error: unknown): string {
  if (error instanceof ApiRequestError) {
    const fields = error.body.fields
      ? " " +
        Object.entries(error.body.fields)
          .map(([key, message]) => `${key}: ${message}`)
          .join("; ")
      : "";
    return `${error.body.message}${fields}`;
  }
  return error instanceof Error ? error.message : String(error);
}

function update(next: DesignerState): void {
  const designChanged =
    next.weights !== current.weights ||
    next.normalization !== current.normalization ||
    next.sensitiveAttribute !== current.sensitiveAttribute ||
    next.diversityAttributes !== current.diversityAttributes ||
    next.k !== current.k ||
    next.alpha !== current.alpha ||
    next.datasetId !== current.datasetId;
  current = next;
  render();
  if (designChanged) {
    void refreshPreview();
  }
}

async function refreshPreview(): Promise<void> {
  previewController?.abort();
  previewController = null;
  if (!state.canPreview(current) || current.datasetId === null) return;
  const controller = new AbortController();
  previewController = controller;
  try {
    const response = await client.createRanking(
      current.datasetId,
      state.toRankingRequest(current),
      controller.signal,
    );
    if (controller.signal.aborted) return;
    current = state.applyPreview(current, response.ranking_id, response.preview);
    render();
  } catch (error) {
    if (controller.signal.aborted) return;
    current = state.setError(current, describeError(error));
    render();
  }
}

async function selectDataset(datasetId: string): Promise<void> {
  try {
    const descriptor = await client.getDataset(datasetId);
    update(state.selectDataset(current, descriptor));
    $("histogram").replaceChildren();
  } catch (error) {
    update(state.setError(current, describeError(error)));
  }
}

async function showHistogram(attribute: string): Promise<void> {
  if (current.datasetId === null) return;
  const bins = Number((document.getElementById("bins") as HTMLInputElement).value) || 10;
  try {
    const response = await client.getHistogram(current.datasetId, attribute, bins);
    renderHistogram($("histogram"), response);
  } catch (error) {
    update(state.setError(current, describeError(error)));
  }
}

async function generateLabel(): Promise<void> {
  if (current.rankingId === null) return;
  try {
    const label = await client.getLabel(current.rankingId);
    update(state.applyLabel(current, label));
    $("label-panel").scrollIntoView({ behavior: "smooth" });
  } catch (error) {
    update(state.setError(current, describeError(error)));
  }
}

async function refreshDatasets(): Promise<void> {
  try {
    const datasets = await client.listDatasets();
    renderDatasetList($("dataset-list"), datasets, current.datasetId, (id) => {
      void selectDataset(id);
    });
  } catch (error) {
    update(state.setError(current, describeError(error)));
  }
}

function render(): void {
  renderError($("error"), current.error);
  renderSchemaTable($("schema"), current);
  renderDesignControls($("design-controls"), current, {
    onWeight: (attribute, value) =>
      update(
        value === null || Number.isNaN(value)
          ? state.clearWeight(current, attribute)
          : state.setWeight(current, attribute, value),
      ),
    onNormalization: (mode) =>
      update(state.setNormalization(current, mode as DesignerState["normalization"])),
    onSensitive: (attribute) => update(state.setSensitive(current, attribute)),
    onDiversity: (attribute) => update(state.toggleDiversity(current, attribute)),
    onK: (k) => update(state.setK(current, k)),
    onAlpha: (alpha) => update(state.setAlpha(current, alpha)),
    onShowHistogram: (attribute) => void showHistogram(attribute),
  });
  renderPreview($("preview"), current, () => void generateLabel());
  const labelPanel = $("label-panel");
  if (current.label !== null) {
    renderLabel(labelPanel, buildLabelView(current.label));
  } else {
    labelPanel.replaceChildren();
  }
}

function wireUpload(): void {
  const input = document.getElementById("upload") as HTMLInputElement;
  input.addEventListener("change", async () => {
    const file = input.files?.[0];
    if (!file) return;
    try {
      const descriptor = await client.uploadDataset(file, file.name.replace(/\.csv$/, ""));
      await refreshDatasets();
      update(state.selectDataset(current, descriptor));
    } catch (error) {
      update(state.setError(current, describeError(error)));
    } finally {
      input.value = "";
    }
  });
}

export function start(): void {
  wireUpload();
  render();
  void refreshDatasets();
}

if (typeof document !== "undefined" && document.getElementById("dataset-list") !== null) {
  start();
}
