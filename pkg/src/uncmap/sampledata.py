"""Seeded generators for the bundled sample datasets.

Every generator is deterministic for a fixed seed, so the CSV files under
``datasets/`` can be regenerated bit-identically with::

    python -m uncmap.sampledata datasets/

The symmetric constructions are deliberate: ``gauss2`` mirrors one class
onto the other across x=0 (so symmetric models place their boundary
exactly there), and ``gauss2_diag`` reflects one class through the origin
(so two display corners end up equidistant from both classes).
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

DEFAULT_SEED = 20240517


def _write_csv(path: Path, feature_names: list[str], label_name: str,
               X: np.ndarray, labels: list[str]) -> None:
    lines = [",".join(feature_names + [label_name])]
    for row, lab in zip(X, labels):
        lines.append(",".join(repr(float(v)) for v in row) + "," + lab)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def iris_like(seed: int = DEFAULT_SEED):
    """150-row, 4-feature, 3-class set with iris-shaped per-class Gaussians."""
    rng = np.random.default_rng(seed)
    stats = {
        "setosa": ([5.01, 3.43, 1.46, 0.25], [0.35, 0.38, 0.17, 0.11]),
        "versicolor": ([5.94, 2.77, 4.26, 1.33], [0.52, 0.31, 0.47, 0.20]),
        "virginica": ([6.59, 2.97, 5.55, 2.03], [0.64, 0.32, 0.55, 0.27]),
    }
    rows, labels = [], []
    for name, (mean, std) in stats.items():
        pts = rng.normal(mean, std, size=(50, 4))
        pts = np.clip(np.round(pts, 1), 0.1, None)
        rows.append(pts)
        labels += [name] * 50
    X = np.vstack(rows)
    features = ["sepal_length", "sepal_width", "petal_length", "petal_width"]
    return features, "species", X, labels


def moons(seed: int = DEFAULT_SEED, n_per_class: int = 120, noise: float = 0.15):
    """Two interleaving half-circles with Gaussian noise."""
    rng = np.random.default_rng(seed)
    t = rng.uniform(0.0, np.pi, size=n_per_class)
    upper = np.column_stack([np.cos(t), np.sin(t)])
    t2 = rng.uniform(0.0, np.pi, size=n_per_class)
    lower = np.column_stack([1.0 - np.cos(t2), 1.0 - np.sin(t2) - 0.5])
    X = np.vstack([upper, lower]) + rng.normal(0.0, noise, size=(2 * n_per_class, 2))
    labels = ["upper"] * n_per_class + ["lower"] * n_per_class
    return ["x", "y"], "moon", X, labels


def gauss2(seed: int = DEFAULT_SEED, n_per_class: int = 150,
           center: float = 1.5, sigma: float = 0.8):
    """Two Gaussian blobs, the right class an exact x-mirror of the left.

    The mirror construction makes every fitted symmetric model put its
    decision boundary exactly on x=0, which the geometry tests rely on.
    """
    rng = np.random.default_rng(seed)
    left = rng.normal([-center, 0.0], sigma, size=(n_per_class, 2))
    right = left.copy()
    right[:, 0] = -right[:, 0]
    X = np.vstack([left, right])
    labels = ["left"] * n_per_class + ["right"] * n_per_class
    return ["f1", "f2"], "side", X, labels


def gauss2_diag(seed: int = DEFAULT_SEED, n_per_class: int = 150,
                center: float = 1.4, sigma: float = 0.8):
    """Two Gaussian blobs on the main diagonal, point-symmetric about 0.

    Class b is the exact point reflection of class a, so the two
    off-diagonal display corners sit equidistant from both classes: their
    nearest-neighbour sets are mixed even though the corners are far from
    all data.
    """
    rng = np.random.default_rng(seed)
    a = rng.normal([-center, -center], sigma, size=(n_per_class, 2))
    b = -a
    X = np.vstack([a, b])
    labels = ["low"] * n_per_class + ["high"] * n_per_class
    return ["f1", "f2"], "blob", X, labels


GENERATORS = {
    "iris": iris_like,
    "moons": moons,
    "gauss2": gauss2,
    "gauss2_diag": gauss2_diag,
}


def write_all(outdir: Path, seed: int = DEFAULT_SEED) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, gen in GENERATORS.items():
        features, label_name, X, labels = gen(seed)
        path = outdir / f"{name}.csv"
        _write_csv(path, features, label_name, X, labels)
        written.append(path)
    return written


if __name__ == "__main__":
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("datasets")
    for p in write_all(target):
        print(f"wrote {p}")
