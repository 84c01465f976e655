/** Typed client for the uncmap HTTP API. */

export interface DatasetSummary {
  id: string;
  n_samples: number;
  n_features: number;
  n_classes: number;
  feature_names: string[];
  class_names: string[];
  feature_min: number[];
  feature_max: number[];
}

export interface HyperparamDef {
  name: string;
  type: "int" | "float";
  default: number | null;
  min: number | null;
  max: number | null;
  min_exclusive: boolean;
  max_exclusive: boolean;
  description: string;
}

export interface ModelInfo {
  kind: string;
  display_name: string;
  capabilities: string[];
  hyperparams: HyperparamDef[];
  reference: string;
}

export interface MeasureInfo {
  id: string;
  display_name: string;
  required_capability: string;
  components: string[];
  reference: string;
}

export interface GridSpec {
  x0: number;
  y0: number;
  dx: number;
  dy: number;
  nx: number;
  ny: number;
}

export interface HeatmapComponent {
  name: string;
  values: number[];
  raw_min: number;
  raw_max: number;
  normalized: boolean;
}

export interface HeatmapResponse {
  grid: GridSpec;
  components: HeatmapComponent[];
  scatter: [number, number, number][];
  class_names: string[];
  axis_labels: [string, string];
  measure_id: string;
  measure_reference: string;
  timings: { fit_ms: number; eval_ms: number };
}

export interface ProjectionSpec {
  mode: "feature_pair" | "pca";
  feature_x?: string | null;
  feature_y?: string | null;
  standardize?: boolean | null;
}

export interface HeatmapRequest {
  dataset_id: string;
  projection: ProjectionSpec;
  classifier: { kind: string; hyperparams: Record<string, number> };
  measure_id: string;
  resolution: number;
  margin_fraction: number;
}

/** Server-reported failure; carries the structured error body. */
export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

async function parseOrThrow<T>(response: Response): Promise<T> {
  if (response.ok) {
    return (await response.json()) as T;
  }
  let code = "http_error";
  let message = `HTTP ${response.status}`;
  try {
    const body = await response.json();
    if (body && typeof body === "object") {
      code = body.code ?? code;
      message = body.message ?? JSON.stringify(body);
    }
  } catch {
    /* non-JSON error body: keep the generic message */
  }
  throw new ApiError(response.status, code, message);
}

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: typeof fetch = fetch,
  ) {}

  private get(path: string) {
    return this.fetchFn(`${this.baseUrl}${path}`);
  }

  async datasets(): Promise<DatasetSummary[]> {
    return parseOrThrow(await this.get("/api/datasets"));
  }

  async refresh(): Promise<DatasetSummary[]> {
    return parseOrThrow(
      await this.fetchFn(`${this.baseUrl}/api/datasets/refresh`, { method: "POST" }),
    );
  }

  async models(): Promise<ModelInfo[]> {
    return parseOrThrow(await this.get("/api/models"));
  }

  async measures(): Promise<MeasureInfo[]> {
    return parseOrThrow(await this.get("/api/measures"));
  }

  async heatmap(request: HeatmapRequest): Promise<HeatmapResponse> {
    return parseOrThrow(
      await this.fetchFn(`${this.baseUrl}/api/heatmap`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(request),
      }),
    );
  }
}
