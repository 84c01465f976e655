from .app import create_app
from .core import ServiceState, compute_heatmap, list_datasets, list_measures, list_models
from .schemas import HeatmapRequest, HeatmapResponse

__all__ = [
    "create_app", "ServiceState", "compute_heatmap", "list_datasets",
    "list_measures", "list_models", "HeatmapRequest", "HeatmapResponse",
]
