"""Command-line entry point: serve the API + UI, or compute maps to files.

``compute`` goes through the same service handlers as the HTTP API, so a
batch run and an API call with the same logical request produce identical
values.

Exit codes: 0 ok, 2 usage or environment problem, 3 invalid request.
"""

from __future__ import annotations

import argparse
import os
import socket
import sys
from pathlib import Path

from .errors import ConfigError, InvalidRequestError, UncmapError
from .service.core import ServiceState, compute_heatmap
from .service.schemas import (
    ClassifierSpecModel,
    HeatmapRequest,
    HeatmapResponse,
    ProjectionSpecModel,
)

EXIT_OK = 0
EXIT_ENV = 2
EXIT_REQUEST = 3


def parse_model_arg(text: str) -> ClassifierSpecModel:
    """Parse ``kind:key=val,key=val`` (e.g. ``knn:k=5,alpha=0.5``)."""
    kind, _, rest = text.partition(":")
    hyperparams: dict[str, float | int] = {}
    if rest:
        for part in rest.split(","):
            key, sep, raw = part.partition("=")
            if not sep or not key:
                raise ConfigError(
                    f"bad --model syntax {text!r}; expected kind:key=val,...")
            try:
                hyperparams[key] = int(raw)
            except ValueError:
                try:
                    hyperparams[key] = float(raw)
                except ValueError:
                    raise ConfigError(
                        f"hyperparameter {key!r} has non-numeric value {raw!r}") from None
    try:
        return ClassifierSpecModel(kind=kind, hyperparams=hyperparams)
    except ValueError as exc:
        raise InvalidRequestError(f"unknown classifier kind {kind!r}") from exc


def response_to_csv(resp: HeatmapResponse) -> str:
    """Same row-major x,y,<components...> layout the engine exports."""
    g = resp.grid
    lines = [",".join(["x", "y"] + [c.name for c in resp.components])]
    for j in range(g.ny):
        y = g.y0 + j * g.dy
        for i in range(g.nx):
            x = g.x0 + i * g.dx
            idx = j * g.nx + i
            cells = [repr(x), repr(y)] + [repr(c.values[idx]) for c in resp.components]
            lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uncmap",
        description="uncertainty heatmaps for classifiers on 2D projections")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int,
                       default=int(os.environ.get("UNCMAP_PORT", "8000")),
                       help="0 binds an ephemeral port and prints it")
    serve.add_argument("--data-dir",
                       default=os.environ.get("UNCMAP_DATA_DIR", "datasets"))
    serve.add_argument("--ui-dir", default=None,
                       help="static UI bundle served at /")
    serve.add_argument("--workers", type=int, default=None,
                       help="grid evaluation threads")

    compute = sub.add_parser("compute", help="write one heatmap to a file")
    compute.add_argument("--dataset", required=True)
    proj = compute.add_mutually_exclusive_group(required=True)
    proj.add_argument("--features", metavar="X,Y",
                      help="feature pair, comma separated")
    proj.add_argument("--pca", action="store_true",
                      help="project onto the top-2 principal components")
    compute.add_argument("--standardize", choices=["auto", "on", "off"],
                         default="auto")
    compute.add_argument("--model", required=True,
                         help="classifier spec, e.g. knn:k=5")
    compute.add_argument("--measure", required=True)
    compute.add_argument("--resolution", type=int, default=100)
    compute.add_argument("--margin", type=float, default=0.1)
    compute.add_argument("--out", required=True,
                         help="output file, .csv or .json")
    compute.add_argument("--data-dir",
                         default=os.environ.get("UNCMAP_DATA_DIR", "datasets"))
    compute.add_argument("--workers", type=int, default=None)
    return parser


def run_serve(args) -> int:
    import uvicorn

    from .service.app import create_app

    try:
        app = create_app(args.data_dir, ui_dir=args.ui_dir, workers=args.workers)
    except ConfigError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return EXIT_ENV
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        sock.bind((args.host, args.port))
    except OSError as exc:
        print(f"error: cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        sock.close()
        return EXIT_ENV
    host, port = sock.getsockname()[:2]
    print(f"uncmap serving on http://{host}:{port}", flush=True)
    server = uvicorn.Server(uvicorn.Config(app, log_level="info"))
    server.run(sockets=[sock])
    return EXIT_OK


def run_compute(args) -> int:
    out = Path(args.out)
    if out.suffix.lower() not in (".csv", ".json"):
        print(f"error: --out must end in .csv or .json, got {out.name}",
              file=sys.stderr)
        return EXIT_ENV
    try:
        model_spec = parse_model_arg(args.model)
    except UncmapError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return EXIT_ENV if isinstance(exc, ConfigError) else EXIT_REQUEST
    try:
        state = ServiceState(Path(args.data_dir), workers=args.workers)
    except ConfigError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return EXIT_ENV

    if args.features:
        names = [f.strip() for f in args.features.split(",")]
        if len(names) != 2:
            print("error: --features needs exactly two names", file=sys.stderr)
            return EXIT_ENV
        projection = ProjectionSpecModel(
            mode="feature_pair", feature_x=names[0], feature_y=names[1],
            standardize=None if args.standardize == "auto" else args.standardize == "on")
    else:
        projection = ProjectionSpecModel(
            mode="pca",
            standardize=None if args.standardize == "auto" else args.standardize == "on")

    try:
        request = HeatmapRequest(
            dataset_id=args.dataset,
            projection=projection,
            classifier=model_spec,
            measure_id=args.measure,
            resolution=args.resolution,
            margin_fraction=args.margin,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REQUEST

    try:
        resp = compute_heatmap(state, request)
    except UncmapError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return EXIT_REQUEST

    if out.suffix.lower() == ".csv":
        out.write_text(response_to_csv(resp), encoding="utf-8")
    else:
        out.write_text(resp.model_dump_json(indent=2), encoding="utf-8")
    print(f"wrote {out}")
    print(f"fit_ms={resp.timings.fit_ms:.3f} eval_ms={resp.timings.eval_ms:.3f}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        return run_serve(args)
    return run_compute(args)


if __name__ == "__main__":
    sys.exit(main())
