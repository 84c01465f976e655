"""Probabilistic classifiers behind one capability-declaring interface."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidRequestError
from .base import (
    ENSEMBLE_MEMBERS,
    LOCAL_COUNTS,
    MASS_FUNCTION,
    PROBABILITY,
    ClassifierSpec,
    FittedModel,
    HyperparamDef,
    validate_training_data,
)
from .evidential_knn import EvidentialKnnModel
from .forest import RandomForestModel
from .knn import KnnModel
from .naive_bayes import GaussianNbModel
from .svm import KernelSvmModel


@dataclass(frozen=True)
class KindInfo:
    kind: str
    display_name: str
    capabilities: frozenset[str]
    hyperparams: tuple[HyperparamDef, ...]
    model_class: type[FittedModel]
    reference: str


KINDS: dict[str, KindInfo] = {}


def _register(info: KindInfo) -> None:
    KINDS[info.kind] = info


_register(KindInfo(
    kind="knn",
    display_name="k-nearest neighbors",
    capabilities=KnnModel.capabilities,
    hyperparams=(
        HyperparamDef("k", "int", default=5, min=1,
                      description="number of neighbors"),
        HyperparamDef("alpha", "float", default=1.0, min=0.0,
                      description="Laplace smoothing for neighbor counts"),
    ),
    model_class=KnnModel,
    reference="E. Fix and J. L. Hodges. Discriminatory analysis: nonparametric "
              "discrimination. USAF School of Aviation Medicine, 1951.",
))

_register(KindInfo(
    kind="gaussian_nb",
    display_name="Gaussian naive Bayes",
    capabilities=GaussianNbModel.capabilities,
    hyperparams=(),
    model_class=GaussianNbModel,
    reference="P. Domingos and M. Pazzani. On the optimality of the simple "
              "Bayesian classifier under zero-one loss. Machine Learning 29, 1997.",
))

_register(KindInfo(
    kind="random_forest",
    display_name="random forest",
    capabilities=RandomForestModel.capabilities,
    hyperparams=(
        HyperparamDef("n_trees", "int", default=100, min=1,
                      description="number of bootstrap trees"),
        HyperparamDef("max_depth", "int", default=8, min=1,
                      description="maximum tree depth"),
        HyperparamDef("seed", "int", default=0, min=0,
                      description="seed of the per-tree seed sequence"),
        HyperparamDef("leaf_alpha", "float", default=1.0, min=0.0,
                      description="Laplace smoothing of leaf class frequencies"),
    ),
    model_class=RandomForestModel,
    reference="L. Breiman. Random forests. Machine Learning 45(1):5-32, 2001.",
))

_register(KindInfo(
    kind="svm",
    display_name="RBF-kernel SVM (one-vs-rest)",
    capabilities=KernelSvmModel.capabilities,
    hyperparams=(
        HyperparamDef("C", "float", default=1.0, min=0.0, min_exclusive=True,
                      description="inverse regularization strength"),
        HyperparamDef("gamma", "float", default=1.0, min=0.0, min_exclusive=True,
                      description="RBF kernel width"),
        HyperparamDef("epochs", "int", default=200, min=1,
                      description="passes of the subgradient optimizer"),
        HyperparamDef("seed", "int", default=0, min=0,
                      description="seed of the sampling order"),
    ),
    model_class=KernelSvmModel,
    reference="C. Cortes and V. Vapnik. Support-vector networks. Machine "
              "Learning 20(3):273-297, 1995.",
))

_register(KindInfo(
    kind="evidential_knn",
    display_name="evidential k-NN",
    capabilities=EvidentialKnnModel.capabilities,
    hyperparams=(
        HyperparamDef("k", "int", default=5, min=1,
                      description="number of neighbors"),
        HyperparamDef("alpha0", "float", default=0.95, min=0.0, max=1.0,
                      min_exclusive=True, max_exclusive=True,
                      description="maximum mass a single neighbor can commit"),
        HyperparamDef("gamma", "float", default=None, min=0.0, min_exclusive=True,
                      description="fixed distance decay; per-class default when unset"),
    ),
    model_class=EvidentialKnnModel,
    reference="T. Denoeux. A k-nearest neighbor classification rule based on "
              "Dempster-Shafer theory. IEEE Trans. SMC 25(5):804-813, 1995.",
))


def normalize_spec(kind: str, hyperparams: dict | None) -> ClassifierSpec:
    """Validate a raw spec against the kind's schema; fill defaults."""
    info = KINDS.get(kind)
    if info is None:
        raise InvalidRequestError(
            f"unknown classifier kind {kind!r}; available: {sorted(KINDS)}")
    raw = dict(hyperparams or {})
    resolved: dict = {}
    schema = {h.name: h for h in info.hyperparams}
    for name, value in raw.items():
        if name not in schema:
            raise InvalidRequestError(
                f"unknown hyperparameter {name!r} for kind {kind!r}; "
                f"allowed: {sorted(schema)}")
        if value is None:
            continue
        resolved[name] = schema[name].coerce(value)
    for name, h in schema.items():
        if name not in resolved and h.default is not None:
            resolved[name] = h.default
    return ClassifierSpec(kind=kind, hyperparams=resolved)


def fit(spec: ClassifierSpec, P: np.ndarray, y: np.ndarray,
        class_names: list[str] | None = None) -> FittedModel:
    """Fit a classifier on projected 2D points. Deterministic given spec."""
    info = KINDS.get(spec.kind)
    if info is None:
        raise InvalidRequestError(f"unknown classifier kind {spec.kind!r}")
    P = np.asarray(P, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    if class_names is None:
        class_names = [str(c) for c in range(int(y.max()) + 1)]
    validate_training_data(P, y, class_names)
    return info.model_class(spec, P, y, class_names)


__all__ = [
    "ClassifierSpec", "FittedModel", "HyperparamDef", "KindInfo", "KINDS",
    "fit", "normalize_spec",
    "PROBABILITY", "ENSEMBLE_MEMBERS", "LOCAL_COUNTS", "MASS_FUNCTION",
    "KnnModel", "GaussianNbModel", "RandomForestModel", "KernelSvmModel",
    "EvidentialKnnModel",
]
