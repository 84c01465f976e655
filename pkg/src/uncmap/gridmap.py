"""Evaluation grid over the projected plane and heatmap assembly.

Cells are evaluated pointwise at their centers, row-major, optionally
fanned out over a thread pool. Scheduling never changes the result: each
cell's value depends only on (model, measure, cell center).
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .classifiers.base import FittedModel
from .dataset_store import Dataset
from .errors import CapabilityError, InternalError, InvalidRequestError
from .measures import MeasureDescriptor, evaluate_at, get_measure
from .projection import Bounds, Projected2D

MAX_RESOLUTION = 1000
MAX_CELLS = 10_000_000


@dataclass(frozen=True)
class GridSpec:
    x0: float   # lower-left cell center
    y0: float
    dx: float
    dy: float
    nx: int
    ny: int

    @property
    def n_cells(self) -> int:
        return self.nx * self.ny

    def cell_center(self, i: int, j: int) -> tuple[float, float]:
        return self.x0 + i * self.dx, self.y0 + j * self.dy

    def x_centers(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.nx)

    def y_centers(self) -> np.ndarray:
        return self.y0 + self.dy * np.arange(self.ny)


@dataclass(frozen=True)
class HeatmapGrid:
    spec: GridSpec
    component_name: str
    values: np.ndarray   # row-major, length nx*ny
    raw_min: float
    raw_max: float
    normalized: bool

    @property
    def is_flat(self) -> bool:
        return self.raw_min == self.raw_max


def make_grid(bounds: Bounds, resolution: int) -> GridSpec:
    """Square grid whose cell centers tile the bounds exactly."""
    if not isinstance(resolution, int) or isinstance(resolution, bool):
        raise InvalidRequestError(f"resolution must be an integer, got {resolution!r}")
    if not 2 <= resolution <= MAX_RESOLUTION:
        raise InvalidRequestError(
            f"resolution must be in [2, {MAX_RESOLUTION}], got {resolution}")
    if bounds.width <= 0 or bounds.height <= 0:
        raise InvalidRequestError(f"degenerate bounds {bounds}")
    if resolution * resolution > MAX_CELLS:
        raise InvalidRequestError("grid too large")
    dx = bounds.width / resolution
    dy = bounds.height / resolution
    return GridSpec(x0=bounds.xmin + dx / 2.0, y0=bounds.ymin + dy / 2.0,
                    dx=dx, dy=dy, nx=resolution, ny=resolution)


def check_capability(model: FittedModel, desc: MeasureDescriptor) -> None:
    if desc.required_capability not in model.capabilities:
        raise CapabilityError(desc.required_capability, model.kind,
                              set(model.capabilities), measure_id=desc.id)


def evaluate(model: FittedModel, measure_id: str, spec: GridSpec,
             workers: int | None = None, normalize: bool = True) -> list[HeatmapGrid]:
    """Evaluate one measure over the grid; one HeatmapGrid per component.

    Deterministic and identical for any worker count. With
    ``normalize=True`` each component is min-max scaled to [0,1] for
    display; a constant component becomes all zeros (its flatness is
    recoverable from raw_min == raw_max).
    """
    desc = get_measure(measure_id)
    check_capability(model, desc)
    n_comp = len(desc.components)
    raw = np.empty((n_comp, spec.n_cells), dtype=np.float64)

    def eval_rows(j_start: int, j_end: int) -> None:
        for j in range(j_start, j_end):
            y = spec.y0 + j * spec.dy
            base = j * spec.nx
            for i in range(spec.nx):
                q = (spec.x0 + i * spec.dx, y)
                raw[:, base + i] = evaluate_at(model, desc, q)

    if workers is None or workers <= 1:
        eval_rows(0, spec.ny)
    else:
        chunk = math.ceil(spec.ny / workers)
        splits = [(j, min(j + chunk, spec.ny)) for j in range(0, spec.ny, chunk)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for fut in [pool.submit(eval_rows, a, b) for a, b in splits]:
                fut.result()

    bad = ~np.isfinite(raw)
    if bad.any():
        comp, flat_idx = np.argwhere(bad)[0]
        i, j = int(flat_idx) % spec.nx, int(flat_idx) // spec.nx
        x, y = spec.cell_center(i, j)
        raise InternalError(
            f"non-finite {desc.components[comp]!r} value at cell ({x}, {y})")

    grids = []
    for c, name in enumerate(desc.components):
        vals = raw[c]
        lo, hi = float(vals.min()), float(vals.max())
        if normalize:
            out = (vals - lo) / (hi - lo) if hi > lo else np.zeros_like(vals)
        else:
            out = vals.copy()
        grids.append(HeatmapGrid(spec=spec, component_name=name, values=out,
                                 raw_min=lo, raw_max=hi, normalized=normalize))
    return grids


def scatter_overlay(dataset: Dataset, projected: Projected2D) -> list[tuple[float, float, int]]:
    """One (x, y, class_index) triple per training row, in row order."""
    return [(float(projected.P[i, 0]), float(projected.P[i, 1]), int(dataset.y[i]))
            for i in range(dataset.n_samples)]


# ---------------------------------------------------------------------------
# batch export formats (used by the CLI)


def grids_to_csv(grids: list[HeatmapGrid]) -> str:
    """Row-major ``x,y,<component...>`` table over cell centers."""
    spec = grids[0].spec
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "y"] + [g.component_name for g in grids])
    for j in range(spec.ny):
        for i in range(spec.nx):
            x, y = spec.cell_center(i, j)
            idx = j * spec.nx + i
            writer.writerow([repr(x), repr(y)] + [repr(float(g.values[idx])) for g in grids])
    return buf.getvalue()


def grids_to_json_dict(grids: list[HeatmapGrid]) -> dict:
    spec = grids[0].spec
    return {
        "grid": {"x0": spec.x0, "y0": spec.y0, "dx": spec.dx, "dy": spec.dy,
                 "nx": spec.nx, "ny": spec.ny},
        "components": [
            {"name": g.component_name, "values": [float(v) for v in g.values],
             "raw_min": g.raw_min, "raw_max": g.raw_max,
             "normalized": g.normalized}
            for g in grids
        ],
    }


def grids_to_json(grids: list[HeatmapGrid]) -> str:
    return json.dumps(grids_to_json_dict(grids), indent=2)
