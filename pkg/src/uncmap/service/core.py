"""Service state and handlers shared by the HTTP endpoints and the CLI.

The CLI's batch mode calls these handlers directly, so command-line
output and API responses come from literally the same code path.
"""

from __future__ import annotations

import logging
import threading
import time
from collections import OrderedDict
from pathlib import Path

from .. import classifiers, measures
from ..dataset_store import Dataset, DatasetStore
from ..gridmap import check_capability, evaluate, make_grid, scatter_overlay
from ..projection import ProjectionSpec, data_bounds, project
from .schemas import (
    ComponentModel,
    DatasetSummaryModel,
    GridSpecModel,
    HeatmapRequest,
    HeatmapResponse,
    HyperparamModel,
    MeasureInfoModel,
    ModelInfoModel,
    TimingsModel,
)

log = logging.getLogger("uncmap")

CACHE_SIZE = 32


class ServiceState:
    """Dataset catalog plus a small LRU of fitted (projection, model) pairs.

    The cache key includes the dataset file fingerprint, so replacing a
    CSV on disk and refreshing never serves a model fitted on stale data.
    """

    def __init__(self, data_dir: Path, workers: int | None = None):
        self.store = DatasetStore(Path(data_dir))
        self.workers = workers
        self._cache: OrderedDict[tuple, tuple] = OrderedDict()
        self._cache_lock = threading.Lock()
        self._log_diagnostics()

    def _log_diagnostics(self) -> None:
        for diag in self.store.diagnostics():
            log.warning("skipped dataset file: %s", diag)

    def refresh(self) -> list:
        summaries = self.store.refresh()
        self._log_diagnostics()
        return summaries

    def projected_model(self, dataset: Dataset, proj_spec: ProjectionSpec,
                        clf_spec: classifiers.ClassifierSpec):
        """Fit (or fetch) the model for this exact configuration."""
        key = (dataset.fingerprint, proj_spec.cache_token(), clf_spec.cache_token())
        with self._cache_lock:
            hit = self._cache.get(key)
            if hit is not None:
                self._cache.move_to_end(key)
                return hit
        projected = project(dataset, proj_spec)
        model = classifiers.fit(clf_spec, projected.P, dataset.y,
                                class_names=dataset.class_names)
        with self._cache_lock:
            self._cache[key] = (projected, model)
            while len(self._cache) > CACHE_SIZE:
                self._cache.popitem(last=False)
        return projected, model


# ---------------------------------------------------------------------------
# handlers


def list_datasets(state: ServiceState) -> list[DatasetSummaryModel]:
    return [DatasetSummaryModel(**vars(s)) for s in state.store.summaries()]


def refresh_datasets(state: ServiceState) -> list[DatasetSummaryModel]:
    return [DatasetSummaryModel(**vars(s)) for s in state.refresh()]


def list_models() -> list[ModelInfoModel]:
    out = []
    for info in classifiers.KINDS.values():
        out.append(ModelInfoModel(
            kind=info.kind,
            display_name=info.display_name,
            capabilities=sorted(info.capabilities),
            hyperparams=[HyperparamModel(**vars(h)) for h in info.hyperparams],
            reference=info.reference,
        ))
    return out


def list_measures() -> list[MeasureInfoModel]:
    return [
        MeasureInfoModel(
            id=d.id,
            display_name=d.display_name,
            required_capability=d.required_capability,
            components=list(d.components),
            reference=d.reference,
        )
        for d in measures.registry()
    ]


def compute_heatmap(state: ServiceState, req: HeatmapRequest) -> HeatmapResponse:
    dataset = state.store.load(req.dataset_id)
    desc = measures.get_measure(req.measure_id)
    clf_spec = classifiers.normalize_spec(req.classifier.kind,
                                          req.classifier.hyperparams)
    # cheap capability check before any fitting happens
    kind_caps = classifiers.KINDS[clf_spec.kind].capabilities
    if desc.required_capability not in kind_caps:
        from ..errors import CapabilityError
        raise CapabilityError(desc.required_capability, clf_spec.kind,
                              set(kind_caps), measure_id=desc.id)
    proj_spec = ProjectionSpec(
        mode=req.projection.mode,
        feature_x=req.projection.feature_x,
        feature_y=req.projection.feature_y,
        standardize=req.projection.standardize,
    )
    proj_spec.validate(dataset)

    t0 = time.perf_counter()
    projected, model = state.projected_model(dataset, proj_spec, clf_spec)
    fit_ms = (time.perf_counter() - t0) * 1000.0

    grid_spec = make_grid(data_bounds(projected.P, req.margin_fraction),
                          req.resolution)
    check_capability(model, desc)
    t1 = time.perf_counter()
    grids = evaluate(model, desc.id, grid_spec, workers=state.workers)
    eval_ms = (time.perf_counter() - t1) * 1000.0

    return HeatmapResponse(
        grid=GridSpecModel(x0=grid_spec.x0, y0=grid_spec.y0, dx=grid_spec.dx,
                           dy=grid_spec.dy, nx=grid_spec.nx, ny=grid_spec.ny),
        components=[
            ComponentModel(name=g.component_name,
                           values=[float(v) for v in g.values],
                           raw_min=g.raw_min, raw_max=g.raw_max,
                           normalized=g.normalized)
            for g in grids
        ],
        scatter=scatter_overlay(dataset, projected),
        class_names=list(dataset.class_names),
        axis_labels=projected.axis_labels,
        measure_id=desc.id,
        measure_reference=desc.reference,
        timings=TimingsModel(fit_ms=fit_ms, eval_ms=eval_ms),
    )
