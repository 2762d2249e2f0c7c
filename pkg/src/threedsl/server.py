"""Small static HTTP server for previewing a compiled scene.

Routes:
  /health      liveness probe, plain-text "ok"
  /scene.json  the compiled scene document, byte-for-byte as written on disk
  /            index.html from the assets directory, or a built-in page
  /<path>      other files below the assets directory
"""

from __future__ import annotations

import logging
import mimetypes
from functools import partial
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

log = logging.getLogger(__name__)

FALLBACK_INDEX = b"""<!doctype html>
<html>
<head><meta charset="utf-8"><title>threedsl scene preview</title></head>
<body>
<h1>threedsl scene server</h1>
<p>No viewer assets were configured. The compiled scene document is served at
<a href="/scene.json">/scene.json</a>.</p>
</body>
</html>
"""


class SceneRequestHandler(BaseHTTPRequestHandler):
    """Serves the in-memory scene plus optional on-disk viewer assets."""

    def __init__(self, *args, scene_bytes: bytes, assets_dir: Path | None, **kwargs):
        self.scene_bytes = scene_bytes
        self.assets_dir = assets_dir
        super().__init__(*args, **kwargs)

    # ------------------------------------------------------------------ utils
    def log_message(self, fmt, *args):  # route BaseHTTPRequestHandler noise to logging
        log.debug("%s - %s", self.address_string(), fmt % args)

    def _send(self, status: int, content_type: str, body: bytes) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Cache-Control", "no-store")
        self.end_headers()
        if self.command != "HEAD":
            self.wfile.write(body)

    def _send_404(self) -> None:
        self._send(404, "text/plain; charset=utf-8", b"not found\n")

    def _resolve_asset(self, rel: str) -> Path | None:
        """Map a URL path to a file inside the assets dir; None if unsafe/absent."""
        if self.assets_dir is None:
            return None
        root = self.assets_dir.resolve()
        candidate = (root / rel.lstrip("/")).resolve()
        if root not in candidate.parents and candidate != root:
            return None
        if candidate.is_dir():
            candidate = candidate / "index.html"
        return candidate if candidate.is_file() else None

    # ----------------------------------------------------------------- routes
    def do_GET(self) -> None:  # noqa: N802 (http.server API)
        path = self.path.split("?", 1)[0]
        if path == "/health":
            self._send(200, "text/plain; charset=utf-8", b"ok")
            return
        if path == "/scene.json":
            self._send(200, "application/json; charset=utf-8", self.scene_bytes)
            return
        if path == "/":
            asset = self._resolve_asset("index.html")
            if asset is None:
                self._send(200, "text/html; charset=utf-8", FALLBACK_INDEX)
            else:
                self._send_file(asset)
            return
        asset = self._resolve_asset(path)
        if asset is None:
            self._send_404()
        else:
            self._send_file(asset)

    do_HEAD = do_GET  # same routing; _send suppresses the body

    def _send_file(self, path: Path) -> None:
        ctype = mimetypes.guess_type(path.name)[0] or "application/octet-stream"
        self._send(200, ctype, path.read_bytes())


def make_server(
    scene_bytes: bytes,
    assets_dir: Path | None = None,
    host: str = "127.0.0.1",
    port: int = 0,
) -> ThreadingHTTPServer:
    """Bind a threading HTTP server; raises OSError if the port is unavailable."""
    handler = partial(SceneRequestHandler, scene_bytes=scene_bytes, assets_dir=assets_dir)
    return ThreadingHTTPServer((host, port), handler)
