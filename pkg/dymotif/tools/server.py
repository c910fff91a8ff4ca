"""
HTTP service exposing the motif tools to external agent frameworks.

``GET /tools`` returns the tool schemas; ``POST /tools/<name>`` takes the tool
input as the JSON body and replies ``{"observation": ..., "is_error": bool}``.
"""
import json
import logging
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Any, Optional, Tuple

from .manager import ToolManager

logger = logging.getLogger(__name__)

MAX_BODY_BYTES = 16 * 1024 * 1024


def _make_handler(manager: ToolManager):
    class ToolRequestHandler(BaseHTTPRequestHandler):
        def _reply(self, status: int, payload: Any):
            body = json.dumps(payload).encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def do_GET(self):
            if self.path.rstrip("/") == "/tools":
                self._reply(200, {"tools": manager.get_tool_schemas()})
            else:
                self._reply(404, {"error": f"No route {self.path}"})

        def do_POST(self):
            prefix = "/tools/"
            if not self.path.startswith(prefix):
                self._reply(404, {"error": f"No route {self.path}"})
                return
            name = self.path[len(prefix):].strip("/")
            length = int(self.headers.get("Content-Length") or 0)
            if length > MAX_BODY_BYTES:
                self._reply(413, {"error": "Request body too large"})
                return
            try:
                tool_input = json.loads(self.rfile.read(length).decode("utf-8") or "null")
            except (UnicodeDecodeError, json.JSONDecodeError) as exc:
                self._reply(400, {"observation": f"Error: body is not JSON: {exc}", "is_error": True})
                return
            observation, is_error = manager.call_tool(name, tool_input)
            status = 404 if name not in manager.tools else 200
            self._reply(status, {"observation": observation, "is_error": is_error})

        def log_message(self, format, *args):
            logger.info("%s - %s", self.address_string(), format % args)

    return ToolRequestHandler


def create_server(host: str = "127.0.0.1", port: int = 8765,
                  manager: Optional[ToolManager] = None) -> ThreadingHTTPServer:
    """
    Build (but do not start) the tool service.

    Args:
        host: Interface to bind
        port: Port to bind; 0 picks a free port
        manager: Tool registry; the five motif tools by default
    """
    return ThreadingHTTPServer((host, port), _make_handler(manager or ToolManager()))


def serve(host: str = "127.0.0.1", port: int = 8765) -> Tuple[str, int]:
    """Run the tool service until interrupted."""
    server = create_server(host, port)
    address = server.server_address
    logger.warning("Serving motif tools on http://%s:%s/tools", address[0], address[1])
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return address[0], address[1]
