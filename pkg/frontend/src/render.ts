// DOM construction from view models. This layer only arranges values that
// the state and view-model layers already hold; it never derives numbers.

import { barRect, histogramGeometry, sliceColor, type PieSlice } from "./charts.js";
import type { DesignerState } from "./state.js";
import { binaryCategoricalColumns, categoricalColumns, numericColumns } from "./state.js";
import type { LabelView } from "./viewmodel.js";
import { fmt } from "./viewmodel.js";
import type { DatasetListing, HistogramResponse, PreviewRow } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: (Node | string)[] = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  node.append(...children);
  return node;
}

function table(headers: string[], rows: (Node | string)[][]): HTMLTableElement {
  const head = el("tr", {}, headers.map((h) => el("th", {}, [h])));
  const body = rows.map((cells) => el("tr", {}, cells.map((c) => el("td", {}, [c]))));
  return el("table", {}, [head, ...body]);
}

export function renderDatasetList(
  container: HTMLElement,
  datasets: DatasetListing[],
  selectedId: string | null,
  onSelect: (id: string) => void,
): void {
  container.replaceChildren();
  for (const ds of datasets) {
    const button = el(
      "button",
      { class: ds.dataset_id === selectedId ? "dataset selected" : "dataset" },
      [`${ds.name} (${ds.row_count} rows)`],
    );
    button.addEventListener("click", () => onSelect(ds.dataset_id));
    container.append(button);
  }
}

export function renderSchemaTable(container: HTMLElement, state: DesignerState): void {
  container.replaceChildren();
  if (state.columns.length === 0) return;
  const rows = state.columns.map((c) => {
    const badge = el("span", { class: `badge ${c.kind}` }, [c.kind]);
    const extra =
      c.kind === "numeric" && c.stats
        ? `min ${fmt(c.stats.minimum)} / median ${fmt(c.stats.median)} / max ${fmt(c.stats.maximum)}`
        : `${c.distinct ?? 0} distinct values`;
    return [c.name, badge, fmt(c.count), fmt(c.missing), extra] as (Node | string)[];
  });
  container.append(table(["attribute", "kind", "count", "missing", "summary"], rows));
}

export function renderHistogram(container: HTMLElement, response: HistogramResponse): void {
  container.replaceChildren();
  const geometry = histogramGeometry(response.bin_edges, response.counts);
  const maxCount = Math.max(...response.counts, 1);
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", geometry.viewBox);
  svg.setAttribute("preserveAspectRatio", "none");
  svg.setAttribute("class", "histogram");
  for (const bar of geometry.bars) {
    const rect = document.createElementNS(SVG_NS, "rect");
    const r = barRect(bar, maxCount);
    rect.setAttribute("x", String(r.x + 0.05));
    rect.setAttribute("y", String(r.y));
    rect.setAttribute("width", String(r.width - 0.1));
    rect.setAttribute("height", String(r.height));
    rect.setAttribute("data-count", String(bar.count));
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `[${fmt(bar.lowEdge)}, ${fmt(bar.highEdge)}): ${bar.count}`;
    rect.append(title);
    svg.append(rect);
  }
  container.append(
    el("p", { class: "chart-caption" }, [
      `${response.attribute}: ${response.counts.length} bins`,
    ]),
    svg,
  );
}

export function renderDesignControls(
  container: HTMLElement,
  state: DesignerState,
  handlers: {
    onWeight: (attribute: string, value: number | null) => void;
    onNormalization: (mode: string) => void;
    onSensitive: (attribute: string | null) => void;
    onDiversity: (attribute: string) => void;
    onK: (k: number) => void;
    onAlpha: (alpha: number) => void;
    onShowHistogram: (attribute: string) => void;
  },
): void {
  container.replaceChildren();
  if (state.datasetId === null) {
    container.append(el("p", { class: "hint" }, ["Choose a dataset to start."]));
    return;
  }

  const weightRows: (Node | string)[][] = numericColumns(state).map((c) => {
    const input = el("input", {
      type: "number",
      step: "any",
      placeholder: "weight",
      "data-attribute": c.name,
      value: c.name in state.weights ? String(state.weights[c.name]) : "",
    });
    input.addEventListener("change", () => {
      const text = (input as HTMLInputElement).value.trim();
      handlers.onWeight(c.name, text === "" ? null : Number(text));
    });
    const show = el("button", { class: "link", type: "button" }, ["histogram"]);
    show.addEventListener("click", () => handlers.onShowHistogram(c.name));
    return [c.name, input, show];
  });
  container.append(
    el("h3", {}, ["Scoring attributes"]),
    el("p", { class: "hint" }, [
      "Assign a weight to at least one numeric attribute; use negative weights when smaller is better.",
    ]),
    table(["attribute", "weight", ""], weightRows),
  );

  const norm = el("label", { class: "control" }, ["Normalize attributes: "]);
  const select = el("select", {});
  for (const mode of ["none", "minmax", "zscore"]) {
    const option = el("option", { value: mode }, [mode]);
    if (mode === state.normalization) option.setAttribute("selected", "selected");
    select.append(option);
  }
  select.addEventListener("change", () => handlers.onNormalization(select.value));
  norm.append(select);
  container.append(norm);

  const sensitive = el("label", { class: "control" }, ["Sensitive attribute (binary): "]);
  const sensitiveSelect = el("select", {});
  sensitiveSelect.append(el("option", { value: "" }, ["choose..."]));
  const binaryNames = new Set(binaryCategoricalColumns(state).map((c) => c.name));
  for (const c of categoricalColumns(state)) {
    const option = el("option", { value: c.name }, [
      binaryNames.has(c.name) ? c.name : `${c.name} (${c.distinct} values, not binary)`,
    ]);
    if (!binaryNames.has(c.name)) option.setAttribute("disabled", "disabled");
    if (c.name === state.sensitiveAttribute) option.setAttribute("selected", "selected");
    sensitiveSelect.append(option);
  }
  sensitiveSelect.addEventListener("change", () =>
    handlers.onSensitive(sensitiveSelect.value === "" ? null : sensitiveSelect.value),
  );
  sensitive.append(sensitiveSelect);
  container.append(sensitive);

  const diversity = el("fieldset", { class: "control" }, [
    el("legend", {}, ["Diversity attributes"]),
  ]);
  for (const c of categoricalColumns(state)) {
    const box = el("input", { type: "checkbox", value: c.name });
    if (state.diversityAttributes.includes(c.name)) {
      box.setAttribute("checked", "checked");
    }
    box.addEventListener("change", () => handlers.onDiversity(c.name));
    diversity.append(el("label", { class: "checkbox" }, [box, c.name]));
  }
  container.append(diversity);

  const kInput = el("input", { type: "number", min: "1", step: "1", value: String(state.k) });
  kInput.addEventListener("change", () => handlers.onK(Number(kInput.value)));
  const alphaInput = el("input", {
    type: "number",
    min: "0",
    max: "1",
    step: "any",
    value: String(state.alpha),
  });
  alphaInput.addEventListener("change", () => handlers.onAlpha(Number(alphaInput.value)));
  container.append(
    el("label", { class: "control" }, ["Top-k: ", kInput]),
    el("label", { class: "control" }, ["Significance alpha: ", alphaInput]),
  );
}

export function renderPreview(
  container: HTMLElement,
  state: DesignerState,
  onGenerate: () => void,
): void {
  container.replaceChildren();
  if (state.preview === null) {
    container.append(
      el("p", { class: "hint" }, [
        "Pick scoring weights and a sensitive attribute to preview the ranking.",
      ]),
    );
    return;
  }
  const columns = state.columns.map((c) => c.name);
  const rows = state.preview.map((row: PreviewRow) => [
    fmt(row.rank),
    fmt(row.score),
    ...columns.map((name) => {
      const value = row.values[name];
      return value === null ? "-" : String(value);
    }),
  ]);
  container.append(table(["rank", "score", ...columns], rows));
  const generate = el("button", { class: "primary", id: "generate-label" }, [
    "Generate label",
  ]);
  generate.addEventListener("click", onGenerate);
  container.append(generate);
}

function widgetSection(
  widget: string,
  heading: string,
  overview: (Node | string)[],
  detail: (Node | string)[],
  extraAttrs: Record<string, string> = {},
): HTMLElement {
  const details = el("details", {}, [el("summary", {}, ["Details"]), ...detail]);
  return el("section", { class: "widget", "data-widget": widget, ...extraAttrs }, [
    el("h3", {}, [heading]),
    ...overview,
    details,
  ]);
}

function pieSvg(slices: PieSlice[]): SVGSVGElement {
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", "-1.05 -1.05 2.1 2.1");
  svg.setAttribute("class", "pie");
  slices.forEach((slice, i) => {
    const path = document.createElementNS(SVG_NS, "path");
    path.setAttribute("d", slice.path);
    path.setAttribute("fill", sliceColor(i));
    path.setAttribute("data-category", slice.category);
    path.setAttribute("data-fraction", String(slice.fraction));
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `${slice.category}: ${fmt(slice.fraction)}`;
    path.append(title);
    svg.append(path);
  });
  return svg;
}

export function renderLabel(container: HTMLElement, view: LabelView): void {
  container.replaceChildren();
  if (!view.schemaOk) {
    container.append(
      el("div", { class: "banner error" }, [
        `Label schema ${view.schemaVersion} is not supported by this UI.`,
      ]),
    );
    return;
  }

  const statsTable = (rows: LabelView["recipe"]["stats"]) =>
    table(
      ["attribute", "scope", "min", "max", "median", "count", "missing"],
      rows.map((s) => [
        s.attribute,
        s.scope,
        fmt(s.minimum),
        fmt(s.maximum),
        fmt(s.median),
        fmt(s.count),
        fmt(s.missing),
      ]),
    );

  container.append(
    widgetSection(
      "recipe",
      "Recipe",
      [
        table(
          ["attribute", "weight", "share"],
          view.recipe.rows.map((r) => [r.attribute, fmt(r.weight), fmt(r.share)]),
        ),
      ],
      [statsTable(view.recipe.stats)],
    ),
  );

  container.append(
    widgetSection(
      "ingredients",
      "Ingredients",
      [
        table(
          ["attribute", "importance", "correlation", ""],
          view.ingredients.rows.map((r) => [
            r.attribute,
            fmt(r.importance),
            fmt(r.correlation),
            r.strong ? el("span", { class: "badge strong" }, ["strong"]) : "",
          ]),
        ),
      ],
      [statsTable(view.ingredients.stats)],
    ),
  );

  const gauges = view.stability.rows.map((row) => {
    const gauge = el("div", { class: "gauge", "data-scope": row.scope });
    const fill = el("div", {
      class: row.stable ? "gauge-fill stable" : "gauge-fill unstable",
      style: `width: ${row.gauge.valueFraction * 100}%`,
    });
    const marker = el("div", {
      class: "gauge-threshold",
      style: `left: ${row.gauge.thresholdFraction * 100}%`,
      title: `threshold ${fmt(row.gauge.threshold)}`,
    });
    gauge.append(fill, marker);
    return el("div", { class: "gauge-row" }, [
      el("span", {}, [`${row.scope}: slope ${fmt(row.slope)}`]),
      gauge,
      el("span", { class: row.stable ? "badge stable" : "badge unstable" }, [
        row.stable ? "stable" : "unstable",
      ]),
    ]);
  });
  container.append(
    widgetSection("stability", "Stability", gauges, [
      el("p", {}, [
        `Unstable when |slope| is at or below ${fmt(view.stability.threshold)}.`,
      ]),
    ]),
  );

  const fairnessRows = view.fairness.rows.map((r) => [
    r.measure,
    r.feature,
    el("span", { class: `badge ${r.verdict}`, "data-fair": String(r.fair) }, [r.verdict]),
  ]);
  const fairnessDetails = view.fairness.rows.map((r) =>
    el("div", { class: "fairness-detail" }, [
      el("h4", {}, [`${r.measure}: ${r.protectedValue}`]),
      table(
        ["field", "value"],
        [
          ["statistic", fmt(r.statistic)],
          ...(r.pValue !== null ? [["p_value", fmt(r.pValue)] as [string, string]] : []),
          ["alpha", fmt(view.fairness.alpha)],
          ["direction", r.direction],
          ...r.detailFields,
        ],
      ),
    ]),
  );
  container.append(
    widgetSection(
      "fairness",
      "Fairness",
      [table(["measure", "protected feature", "verdict"], fairnessRows)],
      fairnessDetails,
      { "data-verdict": view.fairness.anyUnfair ? "unfair" : "fair" },
    ),
  );

  const charts = view.diversity.map((chart) =>
    el("figure", { class: "diversity-chart" }, [
      pieSvg(chart.slices),
      el("figcaption", {}, [
        el("strong", {}, [`${chart.attribute} (${chart.scope})`]),
        table(
          ["category", "proportion"],
          chart.slices.map((s) => [s.category, fmt(s.fraction)]),
        ),
      ]),
    ]),
  );
  container.append(
    widgetSection("diversity", "Diversity", [el("div", { class: "charts" }, charts)], [
      el("p", {}, ["Category proportions at top-k versus over all retained rows."]),
    ]),
  );

  container.append(
    widgetSection(
      "methodology",
      "Methodology",
      [table(["field", "value"], view.metadata.slice(0, 8))],
      [table(["field", "value"], view.metadata.slice(8))],
    ),
  );
}

export function renderError(container: HTMLElement, message: string | null): void {
  container.replaceChildren();
  if (message !== null) {
    container.append(el("div", { class: "banner error" }, [message]));
  }
}
