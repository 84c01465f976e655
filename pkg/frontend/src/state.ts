/** View state and the stale-response guard.
 *
 * Every selector change bumps a sequence number before the request goes
 * out; a response is applied only if its token is still the latest, so
 * an older in-flight answer can never overwrite a newer one.
 */

import type { DatasetSummary, HeatmapResponse, MeasureInfo, ModelInfo } from "./api";

export class LatestGate {
  private seq = 0;

  begin(): number {
    return ++this.seq;
  }

  isCurrent(token: number): boolean {
    return token === this.seq;
  }
}

export interface ViewState {
  datasets: DatasetSummary[];
  models: ModelInfo[];
  measures: MeasureInfo[];
  datasetId: string | null;
  usePca: boolean;
  featureX: string | null;
  featureY: string | null;
  modelKind: string;
  hyperparams: Record<string, number>;
  measureId: string;
  activeComponent: string;
  resolution: number;
  lastResponse: HeatmapResponse | null;
  error: string | null;
}

export function initialState(): ViewState {
  return {
    datasets: [],
    models: [],
    measures: [],
    datasetId: null,
    usePca: false,
    featureX: null,
    featureY: null,
    modelKind: "knn",
    hyperparams: {},
    measureId: "entropy",
    activeComponent: "total",
    resolution: 100,
    lastResponse: null,
    error: null,
  };
}

export function defaultHyperparams(model: ModelInfo): Record<string, number> {
  const out: Record<string, number> = {};
  for (const h of model.hyperparams) {
    if (h.default !== null) {
      out[h.name] = h.default;
    }
  }
  return out;
}

/** Reset feature selectors when the dataset changes. */
export function selectDataset(state: ViewState, dataset: DatasetSummary): void {
  state.datasetId = dataset.id;
  state.featureX = dataset.feature_names[0];
  state.featureY = dataset.feature_names[1];
}

export function currentMeasure(state: ViewState): MeasureInfo | undefined {
  return state.measures.find((m) => m.id === state.measureId);
}

/** The component tabs always reflect what the active measure returns. */
export function componentNames(state: ViewState): string[] {
  return currentMeasure(state)?.components ?? ["total"];
}

export function buildRequest(state: ViewState) {
  if (!state.datasetId) {
    throw new Error("no dataset selected");
  }
  return {
    dataset_id: state.datasetId,
    projection: state.usePca
      ? { mode: "pca" as const }
      : {
          mode: "feature_pair" as const,
          feature_x: state.featureX,
          feature_y: state.featureY,
        },
    classifier: { kind: state.modelKind, hyperparams: { ...state.hyperparams } },
    measure_id: state.measureId,
    resolution: state.resolution,
    margin_fraction: 0.1,
  };
}
