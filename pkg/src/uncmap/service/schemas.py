"""Pydantic request/response models: the service's wire contract."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field


class ProjectionSpecModel(BaseModel):
    mode: Literal["feature_pair", "pca"]
    feature_x: str | None = None
    feature_y: str | None = None
    standardize: bool | None = None  # None picks the mode default


class ClassifierSpecModel(BaseModel):
    kind: Literal["knn", "gaussian_nb", "random_forest", "svm", "evidential_knn"]
    hyperparams: dict[str, float | int | None] = Field(default_factory=dict)


class HeatmapRequest(BaseModel):
    dataset_id: str
    projection: ProjectionSpecModel
    classifier: ClassifierSpecModel
    measure_id: str
    resolution: int = Field(default=100, ge=2, le=1000)
    margin_fraction: float = Field(default=0.1, ge=0.0)


class GridSpecModel(BaseModel):
    x0: float
    y0: float
    dx: float
    dy: float
    nx: int
    ny: int


class ComponentModel(BaseModel):
    name: str
    values: list[float]          # row-major, min-max normalized to [0, 1]
    raw_min: float
    raw_max: float
    normalized: bool


class TimingsModel(BaseModel):
    fit_ms: float
    eval_ms: float


class HeatmapResponse(BaseModel):
    grid: GridSpecModel
    components: list[ComponentModel]
    scatter: list[tuple[float, float, int]]
    class_names: list[str]
    axis_labels: tuple[str, str]
    measure_id: str
    measure_reference: str
    timings: TimingsModel


class DatasetSummaryModel(BaseModel):
    id: str
    n_samples: int
    n_features: int
    n_classes: int
    feature_names: list[str]
    class_names: list[str]
    feature_min: list[float]
    feature_max: list[float]


class HyperparamModel(BaseModel):
    name: str
    type: Literal["int", "float"]
    default: float | int | None
    min: float | None = None
    max: float | None = None
    min_exclusive: bool = False
    max_exclusive: bool = False
    description: str = ""


class ModelInfoModel(BaseModel):
    kind: str
    display_name: str
    capabilities: list[str]
    hyperparams: list[HyperparamModel]
    reference: str


class MeasureInfoModel(BaseModel):
    id: str
    display_name: str
    required_capability: str
    components: list[str]
    reference: str


class HealthModel(BaseModel):
    status: str


class ErrorBody(BaseModel):
    code: str
    message: str
