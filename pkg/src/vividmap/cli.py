"""Command-line front door: validate, count, render, scene, serve.

The CLI is a thin client: every command except ``serve`` drives the same
HTTP API in-process (ASGI transport, no sockets), so CLI output is
byte-identical to what a running service would return for the same state.

Exit codes: 0 success, 1 validation failure, 2 I/O error, 64 usage error.
Failures are reported on stderr as one JSON object per line.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path
from typing import Optional

import httpx

from vividmap import __version__
from vividmap.errors import MalformedJson, VividmapError
from vividmap.ontology import Ontology, load_ontology
from vividmap.service import Settings, create_app, settings_from_env

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fail(payload: dict, code: int) -> int:
    print(json.dumps(payload), file=sys.stderr)
    return code


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _load_ontology_file(path: str) -> Ontology:
    return load_ontology(_read_text(path))


def _parse_opacity_flags(pairs: list[str]) -> dict[str, float]:
    out = {}
    for pair in pairs:
        name, sep, raw = pair.partition("=")
        if not sep or not name:
            raise UsageError(f"--opacity expects cat=alpha, got {pair!r}")
        try:
            alpha = float(raw)
        except ValueError:
            raise UsageError(f"--opacity value for {name!r} is not a number: {raw!r}") from None
        if not 0.0 <= alpha <= 1.0:
            raise UsageError(f"--opacity value for {name!r} outside [0, 1]: {alpha}")
        out[name] = alpha
    return out


def _parse_bbox_flag(raw: str) -> list[float]:
    parts = raw.split(",")
    if len(parts) != 4:
        raise UsageError(f"--bbox expects w,s,e,n, got {raw!r}")
    try:
        return [float(v) for v in parts]
    except ValueError:
        raise UsageError(f"--bbox components must be numbers: {raw!r}") from None


def _parse_size_flag(raw: str) -> list[int]:
    parts = raw.lower().split("x")
    try:
        w, h = int(parts[0]), int(parts[1])
    except (ValueError, IndexError):
        raise UsageError(f"--size expects WxH, got {raw!r}") from None
    if w < 1 or h < 1:
        raise UsageError(f"--size must be positive, got {raw!r}")
    return [w, h]


async def _with_client(ontology: Ontology, fn):
    app = create_app(ontology, Settings())
    transport = httpx.ASGITransport(app=app)
    async with httpx.AsyncClient(transport=transport, base_url="http://vividmap") as client:
        return await fn(client)


def _error_exit(response: httpx.Response) -> int:
    body = response.json()
    return _fail(body, EXIT_VALIDATION)


async def _post_dataset(client: httpx.AsyncClient, geojson_text: str) -> httpx.Response:
    return await client.post("/datasets", content=geojson_text.encode("utf-8"),
                             headers={"content-type": "application/geo+json"})


def cmd_validate(args) -> int:
    ontology = _load_ontology_file(args.ontology)
    text = _read_text(args.geojson)

    async def run(client):
        response = await _post_dataset(client, text)
        if response.status_code != 201:
            return _error_exit(response)
        body = response.json()
        print(f"OK: {body['feature_count']} feature(s), "
              f"categories: {', '.join(body['categories_present'])}")
        return EXIT_OK

    return asyncio.run(_with_client(ontology, run))


def cmd_count(args) -> int:
    ontology = _load_ontology_file(args.ontology)
    text = _read_text(args.geojson)
    region_text = _read_text(args.region)

    async def run(client):
        response = await _post_dataset(client, text)
        if response.status_code != 201:
            return _error_exit(response)
        dataset_id = response.json()["dataset_id"]
        response = await client.get(f"/datasets/{dataset_id}/count",
                                    params={"category": args.category, "region": region_text})
        if response.status_code != 200:
            return _error_exit(response)
        print(response.json()["count"])
        return EXIT_OK

    return asyncio.run(_with_client(ontology, run))


async def _render_state(client, args, mode: str) -> tuple[Optional[int], Optional[str]]:
    """Upload the dataset, open a session, apply flags; returns (error, session)."""
    response = await _post_dataset(client, args._geojson_text)
    if response.status_code != 201:
        return _error_exit(response), None
    dataset_id = response.json()["dataset_id"]
    response = await client.post("/sessions", json={
        "dataset_id": dataset_id, "mode": mode,
        "bbox": args._bbox, "viewport": args._size,
    })
    if response.status_code != 201:
        return _error_exit(response), None
    session_id = response.json()["session_id"]
    for category, alpha in args._opacity.items():
        response = await client.put(f"/sessions/{session_id}/opacity",
                                    json={"category_id": category, "alpha": alpha})
        if response.status_code != 200:
            return _error_exit(response), None
    for category in args.hide or []:
        response = await client.put(f"/sessions/{session_id}/visibility",
                                    json={"category_id": category, "visible": False})
        if response.status_code != 200:
            return _error_exit(response), None
    if args._rings:
        response = await client.put(f"/sessions/{session_id}/annotations",
                                    json={"rings": args._rings})
        if response.status_code != 200:
            return _error_exit(response), None
    return None, session_id


def _prepare_render_args(args) -> None:
    args._geojson_text = _read_text(args.geojson)
    args._bbox = _parse_bbox_flag(args.bbox)
    args._size = _parse_size_flag(args.size)
    args._opacity = _parse_opacity_flags(args.opacity or [])
    args._rings = []
    for path in args.annotate or []:
        try:
            args._rings.append(json.loads(_read_text(path)))
        except json.JSONDecodeError as exc:
            raise MalformedJson(f"annotation ring {path}: {exc}") from exc


def _run_render(args, mode: str, endpoint: str) -> int:
    ontology = _load_ontology_file(args.ontology)
    _prepare_render_args(args)

    async def run(client):
        error, session_id = await _render_state(client, args, mode)
        if error is not None:
            return error
        response = await client.get(f"/sessions/{session_id}/{endpoint}")
        if response.status_code != 200:
            return _error_exit(response)
        try:
            Path(args.output).write_bytes(response.content)
        except OSError as exc:
            return _fail({"code": "io_error", "message": f"cannot write {args.output}: {exc}"},
                         EXIT_IO)
        return EXIT_OK

    return asyncio.run(_with_client(ontology, run))


def cmd_render(args) -> int:
    return _run_render(args, "2D", "render.svg")


def cmd_scene(args) -> int:
    return _run_render(args, "3D", "scene.json")


def cmd_serve(args) -> int:
    import os

    import uvicorn

    settings = settings_from_env()
    if args.ui_dir:
        settings.ui_dir = Path(args.ui_dir)
    if args.snapshot:
        settings.snapshot_path = Path(args.snapshot)
    ontology_path = args.ontology or os.environ.get("VIVIDMAP_ONTOLOGY")
    if not ontology_path:
        raise UsageError("serve needs --ontology or VIVIDMAP_ONTOLOGY")
    port = args.port if args.port is not None else int(os.environ.get("VIVIDMAP_PORT", "8000"))
    ontology = _load_ontology_file(ontology_path)
    app = create_app(ontology, settings)
    uvicorn.run(app, host=args.host, port=port, log_level="info")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="vividmap",
                     description="Category-styled 2D/3D map engine.")
    parser.add_argument("--version", action="version", version=f"vividmap {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a GeoJSON dataset against an ontology")
    p.add_argument("geojson")
    p.add_argument("--ontology", required=True)
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("count", help="count features of a category inside a region ring")
    p.add_argument("geojson")
    p.add_argument("--ontology", required=True)
    p.add_argument("--category", required=True)
    p.add_argument("--region", required=True, help="JSON file holding [[lon,lat],...]")
    p.set_defaults(fn=cmd_count)

    for name, helptext, fn in (("render", "render a 2D SVG map", cmd_render),
                               ("scene", "export a 3D scene JSON", cmd_scene)):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("geojson")
        p.add_argument("--ontology", required=True)
        p.add_argument("--bbox", required=True, help="w,s,e,n")
        p.add_argument("--size", required=True, help="WxH pixels")
        p.add_argument("--opacity", action="append", metavar="CAT=ALPHA")
        p.add_argument("--hide", action="append", metavar="CAT")
        p.add_argument("--annotate", action="append", metavar="RING_JSON",
                       help="JSON ring file drawn as the orange annotation line")
        p.add_argument("-o", "--output", required=True)
        p.set_defaults(fn=fn)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--ontology", help="category config (or VIVIDMAP_ONTOLOGY)")
    p.add_argument("--port", type=int, help="default 8000 (or VIVIDMAP_PORT)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--ui-dir", help="static directory to mount at /ui")
    p.add_argument("--snapshot", help="session snapshot file written on shutdown")
    p.set_defaults(fn=cmd_serve)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except UsageError as exc:
        return _fail({"code": "usage", "message": str(exc)}, EXIT_USAGE)
    except VividmapError as exc:
        return _fail(exc.payload(), EXIT_VALIDATION)
    except OSError as exc:
        return _fail({"code": "io_error", "message": str(exc)}, EXIT_IO)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
