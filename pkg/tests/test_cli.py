from __future__ import annotations

import json
import re
import subprocess
import sys
import time
import urllib.request

import pytest
from fastapi.testclient import TestClient

from uncmap import sampledata
from uncmap.cli import main, parse_model_arg
from uncmap.errors import InvalidRequestError
from uncmap.service.app import create_app
from uncmap.service.schemas import HeatmapResponse


@pytest.fixture(scope="module")
def data_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("cli_data")
    sampledata.write_all(root)
    return root


def run_cli(*argv) -> int:
    return main([str(a) for a in argv])


class TestParseModelArg:
    def test_plain_kind(self):
        spec = parse_model_arg("gaussian_nb")
        assert spec.kind == "gaussian_nb" and spec.hyperparams == {}

    def test_kind_with_params(self):
        spec = parse_model_arg("knn:k=5,alpha=0.5")
        assert spec.kind == "knn"
        assert spec.hyperparams == {"k": 5, "alpha": 0.5}

    def test_unknown_kind(self):
        with pytest.raises(InvalidRequestError):
            parse_model_arg("mlp:layers=3")


class TestCompute:
    def test_writes_csv_with_header_plus_cells(self, data_dir, tmp_path, capsys):
        out = tmp_path / "map.csv"
        code = run_cli("compute", "--dataset", "iris",
                       "--features", "sepal_length,petal_width",
                       "--model", "knn:k=5", "--measure", "entropy",
                       "--resolution", 50, "--out", out,
                       "--data-dir", data_dir)
        assert code == 0
        lines = out.read_text().strip().split("\n")
        assert len(lines) == 2501
        assert lines[0] == "x,y,total"
        captured = capsys.readouterr()
        assert "fit_ms=" in captured.out and "eval_ms=" in captured.out

    def test_incompatible_pair_exits_3_with_api_message(self, data_dir, tmp_path,
                                                        capsys):
        code = run_cli("compute", "--dataset", "iris",
                       "--features", "sepal_length,petal_width",
                       "--model", "gaussian_nb", "--measure", "rl_decomposition",
                       "--out", tmp_path / "x.csv", "--data-dir", data_dir)
        assert code == 3
        cli_message = capsys.readouterr().err
        app = create_app(data_dir)
        with TestClient(app) as client:
            r = client.post("/api/heatmap", json={
                "dataset_id": "iris",
                "projection": {"mode": "feature_pair",
                               "feature_x": "sepal_length",
                               "feature_y": "petal_width"},
                "classifier": {"kind": "gaussian_nb", "hyperparams": {}},
                "measure_id": "rl_decomposition",
            })
        assert r.status_code == 422
        assert r.json()["message"] in cli_message

    def test_missing_data_dir_exits_2(self, tmp_path):
        code = run_cli("compute", "--dataset", "iris", "--pca",
                       "--model", "knn:k=5", "--measure", "entropy",
                       "--out", tmp_path / "x.csv",
                       "--data-dir", tmp_path / "missing")
        assert code == 2

    def test_unknown_dataset_exits_3(self, data_dir, tmp_path):
        code = run_cli("compute", "--dataset", "nope", "--pca",
                       "--model", "knn:k=5", "--measure", "entropy",
                       "--out", tmp_path / "x.csv", "--data-dir", data_dir)
        assert code == 3

    def test_coarse_grid_is_faster(self, data_dir, tmp_path, capsys):
        def eval_ms(resolution):
            out = tmp_path / f"m{resolution}.csv"
            assert run_cli("compute", "--dataset", "gauss2",
                           "--features", "f1,f2", "--model", "knn:k=5",
                           "--measure", "entropy", "--resolution", resolution,
                           "--out", out, "--data-dir", data_dir) == 0
            text = capsys.readouterr().out
            return float(re.search(r"eval_ms=([0-9.]+)", text).group(1))

        coarse = eval_ms(10)
        fine = eval_ms(100)
        assert coarse < fine

    def test_json_output_matches_api_response(self, data_dir, tmp_path):
        out = tmp_path / "map.json"
        assert run_cli("compute", "--dataset", "gauss2",
                       "--features", "f1,f2", "--model", "knn:k=7",
                       "--measure", "entropy", "--resolution", 20,
                       "--out", out, "--data-dir", data_dir) == 0
        doc = json.loads(out.read_text())
        HeatmapResponse.model_validate(doc)  # conforms to the API schema

        app = create_app(data_dir)
        with TestClient(app) as client:
            r = client.post("/api/heatmap", json={
                "dataset_id": "gauss2",
                "projection": {"mode": "feature_pair", "feature_x": "f1",
                               "feature_y": "f2"},
                "classifier": {"kind": "knn", "hyperparams": {"k": 7}},
                "measure_id": "entropy",
                "resolution": 20,
            })
        api = r.json()
        assert doc["components"] == api["components"]
        assert doc["grid"] == api["grid"]
        assert doc["scatter"] == api["scatter"]

    def test_pca_flag(self, data_dir, tmp_path):
        out = tmp_path / "pca.csv"
        assert run_cli("compute", "--dataset", "iris", "--pca",
                       "--model", "gaussian_nb", "--measure", "gini",
                       "--resolution", 15, "--out", out,
                       "--data-dir", data_dir) == 0
        assert len(out.read_text().strip().split("\n")) == 226

    def test_bad_out_extension_exits_2(self, data_dir, tmp_path):
        code = run_cli("compute", "--dataset", "iris", "--pca",
                       "--model", "knn:k=3", "--measure", "entropy",
                       "--out", tmp_path / "map.txt", "--data-dir", data_dir)
        assert code == 2


class TestServe:
    def test_ephemeral_port_and_health(self, data_dir):
        proc = subprocess.Popen(
            [sys.executable, "-m", "uncmap.cli", "serve", "--port", "0",
             "--data-dir", str(data_dir)],
            stdout=subprocess.PIPE, stderr=subprocess.STDOUT, text=True)
        try:
            line = proc.stdout.readline()
            m = re.search(r"http://([\d.]+):(\d+)", line)
            assert m, f"no address line, got: {line!r}"
            url = f"http://{m.group(1)}:{m.group(2)}/api/health"
            deadline = time.time() + 10
            body = None
            while time.time() < deadline:
                try:
                    with urllib.request.urlopen(url, timeout=1) as resp:
                        body = json.loads(resp.read())
                    break
                except Exception:
                    time.sleep(0.1)
            assert body == {"status": "ok"}
        finally:
            proc.terminate()
            proc.wait(timeout=10)

    def test_missing_data_dir_exits_2(self, tmp_path):
        proc = subprocess.run(
            [sys.executable, "-m", "uncmap.cli", "serve", "--port", "0",
             "--data-dir", str(tmp_path / "absent")],
            capture_output=True, text=True, timeout=30)
        assert proc.returncode == 2
        assert "does not exist" in proc.stderr
