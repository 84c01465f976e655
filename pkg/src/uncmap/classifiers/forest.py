"""Random forest built from scratch: bootstrap + Gini-split trees.

Tree i is grown from its own seed derived from the forest seed, so
growing more trees never changes the trees already built, and every map
is reproducible from the data and hyperparameters.
"""

from __future__ import annotations

import numpy as np

from ..utils import derived_seed
from .base import ENSEMBLE_MEMBERS, PROBABILITY, ClassifierSpec, FittedModel


def _gini(counts: np.ndarray) -> float:
    n = counts.sum()
    if n == 0:
        return 0.0
    p = counts / n
    return float(1.0 - (p * p).sum())


def _leaf(y: np.ndarray, n_classes: int, alpha: float) -> dict:
    counts = np.bincount(y, minlength=n_classes).astype(np.float64)
    dist = (counts + alpha) / (counts.sum() + alpha * n_classes)
    return {"leaf": True, "dist": dist.tolist()}


def _best_split(X: np.ndarray, y: np.ndarray, n_classes: int):
    """Lowest weighted-Gini split over both features; midpoint thresholds.

    Returns (feature, threshold) or None when no split separates anything.
    Ties keep the first candidate in (feature, ascending threshold) order.
    """
    n = X.shape[0]
    best = None
    best_score = np.inf
    for f in range(X.shape[1]):
        col = X[:, f]
        uniq = np.unique(col)
        if uniq.size < 2:
            continue
        for t in (uniq[:-1] + uniq[1:]) / 2.0:
            mask = col <= t
            left = np.bincount(y[mask], minlength=n_classes)
            right = np.bincount(y[~mask], minlength=n_classes)
            nl, nr = left.sum(), right.sum()
            score = (nl * _gini(left) + nr * _gini(right)) / n
            if score < best_score:
                best_score = score
                best = (f, float(t))
    return best


def _grow(X: np.ndarray, y: np.ndarray, n_classes: int, depth: int,
          max_depth: int, alpha: float) -> dict:
    if depth >= max_depth or y.size < 2 or np.unique(y).size == 1:
        return _leaf(y, n_classes, alpha)
    split = _best_split(X, y, n_classes)
    if split is None:
        return _leaf(y, n_classes, alpha)
    f, t = split
    mask = X[:, f] <= t
    return {
        "leaf": False,
        "feature": f,
        "threshold": t,
        "left": _grow(X[mask], y[mask], n_classes, depth + 1, max_depth, alpha),
        "right": _grow(X[~mask], y[~mask], n_classes, depth + 1, max_depth, alpha),
    }


def tree_predict(node: dict, q: np.ndarray) -> np.ndarray:
    while not node["leaf"]:
        node = node["left"] if q[node["feature"]] <= node["threshold"] else node["right"]
    return np.asarray(node["dist"])


class RandomForestModel(FittedModel):
    kind = "random_forest"
    capabilities = frozenset({PROBABILITY, ENSEMBLE_MEMBERS})

    def __init__(self, spec: ClassifierSpec, points: np.ndarray, y: np.ndarray,
                 class_names: list[str]):
        super().__init__(spec, points, y, class_names)
        hp = spec.hyperparams
        self.n_trees = hp["n_trees"]
        self.max_depth = hp["max_depth"]
        self.seed = hp["seed"]
        self.leaf_alpha = hp["leaf_alpha"]
        self._trees = []
        n = points.shape[0]
        for i in range(self.n_trees):
            rng = np.random.default_rng(derived_seed(self.seed, i))
            boot = rng.integers(0, n, size=n)
            self._trees.append(
                _grow(points[boot], y[boot], self.n_classes, 0,
                      self.max_depth, self.leaf_alpha))

    def ensemble_members(self, q) -> np.ndarray:
        q = self._query(q)
        return np.stack([tree_predict(t, q) for t in self._trees])

    def predict_proba(self, q) -> np.ndarray:
        return self.ensemble_members(q).mean(axis=0)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "class_names": self.class_names,
            "n_trees": self.n_trees,
            "max_depth": self.max_depth,
            "seed": self.seed,
            "leaf_alpha": self.leaf_alpha,
            "trees": self._trees,
        }
