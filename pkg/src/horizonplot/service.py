"""Stateless HTTP facade over the render pipeline.

Endpoints:
    POST /render   render request -> segments + stats + region
    GET  /surfaces builtin catalog
    GET  /healthz  liveness

Malformed request bodies get 400; well-formed requests whose render fails
get 422 with the failing stage.  Requests are independent, handled on one
thread each; the only shared state is the immutable catalog, so concurrent
identical requests yield identical bodies.
"""

from __future__ import annotations

import argparse
import json
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .errors import RenderError
from .ordering import OrderingStrategy
from .output import render_report
from .pipeline import RenderConfig, render, render_shared_band
from .projection import Viewpoint
from .surfaces import SurfaceSpec, build_surface, surface_catalog

DEFAULT_PORT = 7878
# Cap on M*N per request; the pipeline is linear in samples, but a runaway
# request should fail fast rather than stall the service.
MAX_POINTS = 1_000_000


class BadRequest(ValueError):
    pass


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise BadRequest(message)


def _parse_grid(value) -> tuple[int, int]:
    if isinstance(value, str):
        parts = value.lower().split("x")
        _require(len(parts) == 2, f"grid must be [m, n] or 'MxN', got {value!r}")
        try:
            value = [int(parts[0]), int(parts[1])]
        except ValueError:
            raise BadRequest(f"grid must contain integers, got {value!r}")
    _require(isinstance(value, (list, tuple)) and len(value) == 2,
             "grid must be a pair [m, n]")
    m, n = value
    _require(isinstance(m, int) and isinstance(n, int) and not isinstance(m, bool)
             and not isinstance(n, bool), "grid sizes must be integers")
    _require(m >= 2 and n >= 2, f"grid needs at least 2x2 samples, got {m}x{n}")
    return m, n


def parse_render_request(body: dict):
    """Validate a /render body; raises BadRequest with a usable message."""
    _require(isinstance(body, dict), "request body must be a JSON object")

    surface = body.get("surface")
    _require(isinstance(surface, dict), "missing 'surface' object")
    kind = surface.get("kind")
    _require(isinstance(kind, str), "surface.kind must be a string")
    params = surface.get("parameters", {})
    _require(isinstance(params, dict), "surface.parameters must be an object")
    for key, val in params.items():
        _require(isinstance(val, (int, float)) and not isinstance(val, bool),
                 f"surface parameter {key!r} must be a number")

    view = body.get("view")
    _require(isinstance(view, (list, tuple)) and len(view) == 3
             and all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in view),
             "view must be [v1, v2, v3]")

    m, n = _parse_grid(body.get("grid", [50, 50]))

    device = body.get("device", [1024, 768])
    _require(isinstance(device, (list, tuple)) and len(device) == 2
             and all(isinstance(c, int) and not isinstance(c, bool) for c in device),
             "device must be [kx, ky]")
    kx, ky = device
    _require(kx >= 2 and ky >= 2, f"device needs at least 2x2 cells, got {kx}x{ky}")

    ordering = body.get("ordering", "row")
    _require(ordering in ("row", "cantor"), f"unknown ordering {ordering!r}")

    margin = body.get("margin", 0.05)
    _require(isinstance(margin, (int, float)) and not isinstance(margin, bool)
             and 0.0 <= margin < 0.5, f"margin must lie in [0, 0.5), got {margin!r}")

    spec = SurfaceSpec(kind=kind, parameters={k: float(v) for k, v in params.items()})
    cfg = RenderConfig(kx=kx, ky=ky, ordering=OrderingStrategy(ordering),
                       margin_fraction=float(margin))
    return spec, Viewpoint(*(float(c) for c in view)), (m, n), cfg


def handle_render(body: dict) -> tuple[int, dict]:
    """Run one render request; returns (status, response body)."""
    try:
        spec, view, (m, n), cfg = parse_render_request(body)
    except BadRequest as exc:
        return 400, {"error": str(exc)}
    if m * n > MAX_POINTS:
        return 422, {"stage": "sampling",
                     "error": f"grid of {m * n} samples exceeds the {MAX_POINTS} cap"}
    try:
        pieces, shared = build_surface(spec, m, n, view_height=view.v3)
    except ValueError as exc:
        return 400, {"error": str(exc)}
    except RenderError as exc:
        return 422, {"stage": exc.stage, "error": str(exc)}
    try:
        if shared:
            segments, stats = render_shared_band(pieces, view, cfg)
        else:
            segments, stats = render(pieces[0], view, cfg)
    except RenderError as exc:
        return 422, {"stage": exc.stage, "error": str(exc)}
    return 200, render_report(segments, stats, cfg)


class RenderHandler(BaseHTTPRequestHandler):
    server_version = "horizonplot"
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # quiet by default; tests hate chatter
        pass

    def _send_json(self, status: int, payload: dict) -> None:
        body = json.dumps(payload).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def do_GET(self):
        if self.path == "/healthz":
            self._send_json(200, {"status": "ok"})
        elif self.path == "/surfaces":
            self._send_json(200, {"surfaces": surface_catalog()})
        else:
            self._send_json(404, {"error": f"no such resource {self.path!r}"})

    def do_POST(self):
        if self.path != "/render":
            self._send_json(404, {"error": f"no such resource {self.path!r}"})
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            body = json.loads(self.rfile.read(length) or b"")
        except (ValueError, json.JSONDecodeError):
            self._send_json(400, {"error": "body must be valid JSON"})
            return
        status, payload = handle_render(body)
        self._send_json(status, payload)


def make_server(bind: str = "127.0.0.1", port: int = DEFAULT_PORT) -> ThreadingHTTPServer:
    return ThreadingHTTPServer((bind, port), RenderHandler)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="horizonplot-serve",
                                     description="HTTP render service.")
    parser.add_argument("--bind", default="127.0.0.1", help="bind address")
    parser.add_argument("--port", type=int, default=DEFAULT_PORT,
                        help=f"port (default {DEFAULT_PORT})")
    args = parser.parse_args(argv)
    server = make_server(args.bind, args.port)
    host, port = server.server_address[:2]
    print(f"horizonplot render service on http://{host}:{port}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def console_main() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()
