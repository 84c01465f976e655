from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from uncmap import sampledata
from uncmap.dataset_store import DatasetStore


@pytest.fixture(scope="session")
def bundled_dir(tmp_path_factory) -> Path:
    """Session copy of the bundled sample datasets."""
    root = tmp_path_factory.mktemp("datasets")
    sampledata.write_all(root)
    return root


@pytest.fixture(scope="session")
def bundled_store(bundled_dir) -> DatasetStore:
    return DatasetStore(bundled_dir)


@pytest.fixture(scope="session")
def gauss2(bundled_store):
    return bundled_store.load("gauss2")


@pytest.fixture(scope="session")
def gauss2_diag(bundled_store):
    return bundled_store.load("gauss2_diag")


@pytest.fixture(scope="session")
def iris(bundled_store):
    return bundled_store.load("iris")


def write_csv(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8")
    return path


@pytest.fixture()
def tiny_csv_dir(tmp_path) -> Path:
    """A folder with one small valid dataset."""
    write_csv(tmp_path / "tiny.csv",
              "a,b,label\n0.0,0.0,x\n1.0,0.0,x\n0.0,1.0,y\n1.0,1.0,y\n")
    return tmp_path


def six_point_fixture():
    """Two well-separated 3-point clusters; verified linearly separable."""
    P = np.array([
        [-2.0, 0.0], [-2.5, 1.0], [-3.0, -1.0],
        [2.0, 0.0], [2.5, 1.0], [3.0, -1.0],
    ])
    y = np.array([0, 0, 0, 1, 1, 1])
    return P, y
