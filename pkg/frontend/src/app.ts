/** Explorer app: selector bank (panels 3-7), scatter (1), heatmap (2).
 *
 * Any selector change schedules a debounced heatmap request; responses
 * are applied through a sequence gate so a stale answer never lands.
 * Component tabs re-render from the cached response without refetching.
 */

import { ApiClient, ApiError, HeatmapResponse } from "./api";
import { renderHeatmap } from "./heatmap";
import { renderScatter } from "./scatter";
import {
  LatestGate,
  ViewState,
  buildRequest,
  componentNames,
  currentMeasure,
  defaultHyperparams,
  initialState,
  selectDataset,
} from "./state";

export interface AppOptions {
  /** Selector-change debounce; 0 fires synchronously (used in tests). */
  debounceMs?: number;
  /** Overlay the training scatter on the heatmap panel. */
  overlayScatter?: boolean;
}

export interface AppHandles {
  state: ViewState;
  root: HTMLElement;
  requestCompute(): void;
  refreshDatasets(): Promise<void>;
  whenIdle(): Promise<void>;
}

class IdleTracker {
  private count = 0;
  private waiters: (() => void)[] = [];

  enter(): void {
    this.count++;
  }

  exit(): void {
    this.count--;
    if (this.count === 0) {
      const ws = this.waiters;
      this.waiters = [];
      ws.forEach((w) => w());
    }
  }

  wait(): Promise<void> {
    if (this.count === 0) {
      return Promise.resolve();
    }
    return new Promise((resolve) => this.waiters.push(resolve));
  }
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) {
    node.setAttribute(k, v);
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

function option(value: string, label: string): HTMLOptionElement {
  const o = el("option", { value }, label);
  return o;
}

export async function createApp(
  root: HTMLElement,
  client: ApiClient,
  options: AppOptions = {},
): Promise<AppHandles> {
  const debounceMs = options.debounceMs ?? 150;
  const state = initialState();
  const gate = new LatestGate();
  const idle = new IdleTracker();

  const [datasets, models, measures] = await Promise.all([
    client.datasets(),
    client.models(),
    client.measures(),
  ]);
  state.datasets = datasets;
  state.models = models;
  state.measures = measures;
  const firstModel = models.find((m) => m.kind === state.modelKind) ?? models[0];
  state.modelKind = firstModel.kind;
  state.hyperparams = defaultHyperparams(firstModel);
  if (datasets.length > 0) {
    selectDataset(state, datasets[0]);
  }

  // ---- selector bank -------------------------------------------------
  const controls = el("div", { class: "controls" });

  const datasetSelect = el("select", { "data-panel": "3", id: "dataset-select" });
  const refreshButton = el("button", { id: "refresh-button" }, "refresh");

  const featureBox = el("span", { "data-panel": "4", class: "feature-pair" });
  const featureXSelect = el("select", { id: "feature-x" });
  const featureYSelect = el("select", { id: "feature-y" });
  featureBox.append(featureXSelect, featureYSelect);

  const pcaCheckbox = el("input", {
    type: "checkbox", "data-panel": "5", id: "pca-checkbox",
  }) as HTMLInputElement;

  const modelSelect = el("select", { "data-panel": "6", id: "model-select" });
  const hyperparamBox = el("span", { class: "hyperparams", id: "hyperparams" });

  const measureSelect = el("select", { "data-panel": "7", id: "measure-select" });
  const referenceLine = el("div", { class: "reference", id: "measure-reference" });

  const resolutionSlider = el("input", {
    type: "range", min: "10", max: "300", step: "5",
    value: String(state.resolution), id: "resolution-slider",
  }) as HTMLInputElement;
  const resolutionValue = el("span", { id: "resolution-value" },
    String(state.resolution));

  const componentTabs = el("div", { class: "component-tabs", id: "component-tabs" });
  const errorBox = el("div", { class: "error", id: "error-box", role: "alert" });
  errorBox.hidden = true;
  const timingsLine = el("div", { class: "timings", id: "timings" });

  controls.append(
    labelWrap("dataset", datasetSelect), refreshButton,
    labelWrap("features", featureBox),
    labelWrap("PCA", pcaCheckbox),
    labelWrap("model", modelSelect), hyperparamBox,
    labelWrap("measure", measureSelect),
    labelWrap("grid", resolutionSlider), resolutionValue,
  );

  function labelWrap(text: string, node: HTMLElement): HTMLLabelElement {
    const wrap = el("label", { class: "control" });
    wrap.append(el("span", { class: "control-name" }, text), node);
    return wrap;
  }

  // ---- panels ----------------------------------------------------------
  const scatterSection = el("section", { "data-panel": "1", class: "panel" });
  const scatterCanvas = el("canvas", { width: "420", height: "420" });
  const scatterLegend = el("div", { class: "legend" });
  const scatterX = el("div", { class: "axis-x" });
  const scatterY = el("div", { class: "axis-y" });
  scatterSection.append(el("h2", {}, "dataset"), scatterCanvas, scatterLegend,
    scatterX, scatterY);

  const heatmapSection = el("section", { "data-panel": "2", class: "panel" });
  const heatmapCanvas = el("canvas", { width: "420", height: "420" });
  const flatBadge = el("span", { class: "flat-badge" }, "flat map");
  flatBadge.hidden = true;
  const colorbarMin = el("span", { class: "colorbar-min" });
  const colorbarMax = el("span", { class: "colorbar-max" });
  const colorbar = el("div", { class: "colorbar" });
  colorbar.append(colorbarMin, el("span", { class: "colorbar-gradient" }), colorbarMax);
  const heatmapX = el("div", { class: "axis-x" });
  const heatmapY = el("div", { class: "axis-y" });
  heatmapSection.append(el("h2", {}, "uncertainty"), componentTabs, heatmapCanvas,
    colorbar, flatBadge, heatmapX, heatmapY);

  root.replaceChildren(
    controls, referenceLine, errorBox,
    el("main", { class: "panels" }), timingsLine,
  );
  root.querySelector("main")!.append(scatterSection, heatmapSection);

  // ---- option fills ------------------------------------------------------
  function fillDatasetOptions(): void {
    datasetSelect.replaceChildren(
      ...state.datasets.map((d) => option(d.id, `${d.id} (n=${d.n_samples})`)));
    if (state.datasetId) {
      datasetSelect.value = state.datasetId;
    }
  }

  function fillFeatureOptions(): void {
    const ds = state.datasets.find((d) => d.id === state.datasetId);
    const names = ds ? ds.feature_names : [];
    featureXSelect.replaceChildren(...names.map((n) => option(n, n)));
    featureYSelect.replaceChildren(...names.map((n) => option(n, n)));
    if (state.featureX) featureXSelect.value = state.featureX;
    if (state.featureY) featureYSelect.value = state.featureY;
    featureXSelect.disabled = featureYSelect.disabled = state.usePca;
  }

  function fillModelOptions(): void {
    modelSelect.replaceChildren(
      ...state.models.map((m) => option(m.kind, m.display_name)));
    modelSelect.value = state.modelKind;
  }

  function fillHyperparamInputs(): void {
    const model = state.models.find((m) => m.kind === state.modelKind);
    hyperparamBox.replaceChildren();
    if (!model) return;
    for (const h of model.hyperparams) {
      const input = el("input", {
        type: "number", "data-hyperparam": h.name, title: h.description,
      }) as HTMLInputElement;
      if (h.type === "float") input.step = "any";
      const current = state.hyperparams[h.name];
      if (current !== undefined) input.value = String(current);
      input.addEventListener("change", () => {
        const v = Number(input.value);
        if (Number.isFinite(v)) {
          state.hyperparams[h.name] = v;
        } else {
          delete state.hyperparams[h.name];
        }
        requestCompute();
      });
      const wrap = el("label", { class: "hp" });
      wrap.append(el("span", {}, h.name), input);
      hyperparamBox.append(wrap);
    }
  }

  function fillMeasureOptions(): void {
    measureSelect.replaceChildren(
      ...state.measures.map((m) => option(m.id, m.display_name)));
    measureSelect.value = state.measureId;
    referenceLine.textContent = currentMeasure(state)?.reference ?? "";
  }

  function renderComponentTabs(): void {
    const names = state.lastResponse
      ? state.lastResponse.components.map((c) => c.name)
      : componentNames(state);
    if (!names.includes(state.activeComponent)) {
      state.activeComponent = names[0];
    }
    componentTabs.replaceChildren(...names.map((name) => {
      const tab = el("button", { class: "tab", "data-component": name }, name);
      if (name === state.activeComponent) {
        tab.classList.add("active");
      }
      tab.addEventListener("click", () => {
        state.activeComponent = name;
        renderComponentTabs();
        renderPanels(); // from cache, no refetch
      });
      return tab;
    }));
  }

  function renderPanels(): void {
    if (!state.lastResponse) return;
    renderScatter(
      { canvas: scatterCanvas, legend: scatterLegend, xLabel: scatterX, yLabel: scatterY },
      state.lastResponse);
    renderHeatmap(
      { canvas: heatmapCanvas, flatBadge, colorbarMin, colorbarMax,
        xLabel: heatmapX, yLabel: heatmapY },
      state.lastResponse, state.activeComponent, options.overlayScatter ?? true);
    const t = state.lastResponse.timings;
    timingsLine.textContent =
      `fit ${t.fit_ms.toFixed(1)} ms · eval ${t.eval_ms.toFixed(1)} ms`;
  }

  function showError(message: string | null): void {
    state.error = message;
    errorBox.hidden = message === null;
    errorBox.textContent = message ?? "";
  }

  // ---- request pipeline ---------------------------------------------------
  let timer: ReturnType<typeof setTimeout> | null = null;

  function fire(): void {
    const token = gate.begin();
    let request;
    try {
      request = buildRequest(state);
    } catch (err) {
      showError(String(err));
      idle.exit();
      return;
    }
    client.heatmap(request)
      .then((response: HeatmapResponse) => {
        if (!gate.isCurrent(token)) {
          return; // superseded: discard
        }
        state.lastResponse = response;
        showError(null);
        renderComponentTabs();
        renderPanels();
      })
      .catch((err) => {
        if (!gate.isCurrent(token)) {
          return;
        }
        showError(err instanceof ApiError ? err.message : String(err));
      })
      .finally(() => idle.exit());
  }

  function requestCompute(): void {
    if (timer !== null) {
      clearTimeout(timer);
      timer = null;
    } else {
      idle.enter();
    }
    if (debounceMs <= 0) {
      fire();
      return;
    }
    timer = setTimeout(() => {
      timer = null;
      fire();
    }, debounceMs);
  }

  // ---- wiring -------------------------------------------------------------
  datasetSelect.addEventListener("change", () => {
    const ds = state.datasets.find((d) => d.id === datasetSelect.value);
    if (ds) {
      selectDataset(state, ds);
      fillFeatureOptions();
      requestCompute();
    }
  });
  featureXSelect.addEventListener("change", () => {
    state.featureX = featureXSelect.value;
    requestCompute();
  });
  featureYSelect.addEventListener("change", () => {
    state.featureY = featureYSelect.value;
    requestCompute();
  });
  pcaCheckbox.addEventListener("change", () => {
    state.usePca = pcaCheckbox.checked;
    fillFeatureOptions();
    requestCompute();
  });
  modelSelect.addEventListener("change", () => {
    state.modelKind = modelSelect.value;
    const model = state.models.find((m) => m.kind === state.modelKind);
    state.hyperparams = model ? defaultHyperparams(model) : {};
    fillHyperparamInputs();
    requestCompute();
  });
  measureSelect.addEventListener("change", () => {
    state.measureId = measureSelect.value;
    state.activeComponent = componentNames(state)[0];
    referenceLine.textContent = currentMeasure(state)?.reference ?? "";
    renderComponentTabs();
    requestCompute();
  });
  resolutionSlider.addEventListener("input", () => {
    state.resolution = Number(resolutionSlider.value);
    resolutionValue.textContent = resolutionSlider.value;
    requestCompute();
  });

  async function refreshDatasets(): Promise<void> {
    idle.enter();
    try {
      state.datasets = await client.refresh();
      const stillThere = state.datasets.find((d) => d.id === state.datasetId);
      if (!stillThere && state.datasets.length > 0) {
        selectDataset(state, state.datasets[0]);
      }
      fillDatasetOptions();
      fillFeatureOptions();
      requestCompute();
    } finally {
      idle.exit();
    }
  }
  refreshButton.addEventListener("click", () => {
    void refreshDatasets();
  });

  fillDatasetOptions();
  fillFeatureOptions();
  fillModelOptions();
  fillHyperparamInputs();
  fillMeasureOptions();
  renderComponentTabs();
  if (state.datasetId) {
    requestCompute();
  }

  return {
    state,
    root,
    requestCompute,
    refreshDatasets,
    whenIdle: () => idle.wait(),
  };
}
