"""Static dashboard host plus the two read-only API routes.

GET /api/results and /api/geometry return the two files byte-identical to
disk; everything else is served from the dashboard asset directory
(env LISAKIT_DASHBOARD_DIST, falling back to the packaged placeholder).
"""

from __future__ import annotations

import json
import os
from functools import partial
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .errors import InputError

ASSET_ENV = "LISAKIT_DASHBOARD_DIST"

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "application/javascript; charset=utf-8",
    ".mjs": "application/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".json": "application/json; charset=utf-8",
    ".svg": "image/svg+xml",
    ".png": "image/png",
    ".ico": "image/x-icon",
    ".map": "application/json; charset=utf-8",
}

_PLACEHOLDER = """<!doctype html>
<html><head><meta charset="utf-8"><title>lisakit</title></head>
<body>
<h1>lisakit results server</h1>
<p>Dashboard assets are not built. The API routes are live:</p>
<ul><li><a href="/api/results">/api/results</a></li>
<li><a href="/api/geometry">/api/geometry</a></li></ul>
<p>Build the dashboard (see frontend/README.md) and set LISAKIT_DASHBOARD_DIST
to its dist directory, then restart.</p>
</body></html>
"""


def cross_validate(results_payload: dict, geometry_bytes: bytes, id_field: str | None = None) -> None:
    """Refuse to serve when the geometry cannot cover the results' locations.

    The id field is auto-detected: a property key (or feature id) whose
    values cover every result location."""
    doc = json.loads(geometry_bytes.decode("utf-8"))
    feats = doc.get("features", [])
    result_ids = [loc["id"] for loc in results_payload["dataset"]["locations"]]

    candidates: dict[str, set] = {"": set()}
    for feat in feats:
        if feat.get("id") is not None:
            candidates[""].add(str(feat["id"]))
        for key, val in (feat.get("properties") or {}).items():
            candidates.setdefault(key, set()).add(str(val))
    if id_field is not None:
        pools = [candidates.get(id_field, set())]
    else:
        pools = list(candidates.values())

    best_missing: list[str] | None = None
    for pool in pools:
        missing = [rid for rid in result_ids if rid not in pool]
        if not missing:
            return
        if best_missing is None or len(missing) < len(best_missing):
            best_missing = missing
    shown = ", ".join((best_missing or result_ids)[:5])
    raise InputError(
        f"geometry does not cover result locations; first mismatches: {shown}"
    )


class _Handler(BaseHTTPRequestHandler):
    server_version = "lisakit"

    def __init__(self, *args, results: bytes, geometry: bytes, assets: Path | None, **kwargs):
        self._results = results
        self._geometry = geometry
        self._assets = assets
        super().__init__(*args, **kwargs)

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _send(self, code: int, body: bytes, ctype: str) -> None:
        self.send_response(code)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def do_GET(self):  # noqa: N802 (http.server API)
        path = self.path.split("?", 1)[0]
        if path == "/api/results":
            self._send(200, self._results, "application/json; charset=utf-8")
        elif path == "/api/geometry":
            self._send(200, self._geometry, "application/json; charset=utf-8")
        elif path == "/" or path.startswith("/assets/") or "." in Path(path).name:
            self._send_asset(path)
        else:
            self._send(404, b"not found", "text/plain; charset=utf-8")

    def _send_asset(self, path: str) -> None:
        rel = "index.html" if path == "/" else path.removeprefix("/assets/").lstrip("/")
        if self._assets is not None:
            target = (self._assets / rel).resolve()
            if str(target).startswith(str(self._assets.resolve())) and target.is_file():
                ctype = _CONTENT_TYPES.get(target.suffix, "application/octet-stream")
                self._send(200, target.read_bytes(), ctype)
                return
        if path == "/":
            self._send(200, _PLACEHOLDER.encode("utf-8"), "text/html; charset=utf-8")
        else:
            self._send(404, b"not found", "text/plain; charset=utf-8")


def resolve_assets_dir() -> Path | None:
    env = os.environ.get(ASSET_ENV)
    if env and Path(env).is_dir():
        return Path(env)
    packaged = Path(__file__).parent / "static" / "dist"
    return packaged if packaged.is_dir() else None


def make_server(results_path, geometry_path, port: int = 8080) -> ThreadingHTTPServer:
    """Validate the file pair and build (without starting) the HTTP server."""
    results_bytes = Path(results_path).read_bytes()
    geometry_bytes = Path(geometry_path).read_bytes()
    try:
        payload = json.loads(results_bytes.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"results file is not valid JSON: {exc}") from exc
    if "dataset" not in payload or "locations" not in payload.get("dataset", {}):
        raise InputError("results file does not look like a lisakit ResultSet")
    cross_validate(payload, geometry_bytes)

    handler = partial(
        _Handler,
        results=results_bytes,
        geometry=geometry_bytes,
        assets=resolve_assets_dir(),
    )
    try:
        return ThreadingHTTPServer(("127.0.0.1", port), handler)
    except OSError as exc:
        raise InputError(f"cannot bind port {port}: {exc}") from exc
