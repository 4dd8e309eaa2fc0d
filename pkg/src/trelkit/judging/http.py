"""HTTP front end for the judging service (stdlib http.server).

Assessor endpoints (assessor or operator token):
    GET  /assignments/{assessor}
    GET  /assignments/{assessor}/{topic}/next
    POST /judgments                     {assessor_id, topic_id, doc_id, level}
    GET  /documents/{doc}/search?q=

Operator endpoints (operator token):
    POST /pools                         pool file bytes
    GET  /export[?topic=]
    GET  /qc

Anything else under GET serves the static judging UI bundle from the
configured directory. Responses are JSON except the export (plain text)
and the static files.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, unquote, urlparse

from ..formats import parse_manifest, parse_pool
from ..qc import DEFAULT_QC_THRESHOLD
from .service import JudgingService

AUTH_HEADER = "X-Auth-Token"

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".mjs": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".json": "application/json",
    ".svg": "image/svg+xml",
    ".ico": "image/x-icon",
}


@dataclass
class ServiceConfig:
    """Server configuration, loadable from a JSON config file."""

    host: str = "127.0.0.1"
    port: int = 8767
    data_dir: str = "judging-data"
    docs_dir: str | None = None
    pools_dir: str | None = None
    manifest_path: str | None = None
    ui_dir: str | None = None
    seed: int = 0
    qc_threshold: float = DEFAULT_QC_THRESHOLD
    assessor_token: str | None = None
    operator_token: str | None = None

    @classmethod
    def from_file(cls, path: str | Path) -> "ServiceConfig":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


def build_service(config: ServiceConfig) -> JudgingService:
    docs_dir = Path(config.docs_dir) if config.docs_dir else None

    def read_doc(doc_id: str) -> bytes:
        if docs_dir is None:
            raise KeyError(f"unknown document {doc_id!r}")
        safe = doc_id.replace("/", "").replace("\\", "").replace("..", "")
        for candidate in (docs_dir / f"{safe}.html", docs_dir / safe):
            if candidate.is_file():
                return candidate.read_bytes()
        raise KeyError(f"unknown document {doc_id!r}")

    manifest = None
    if config.manifest_path:
        manifest = parse_manifest(Path(config.manifest_path).read_bytes())
    service = JudgingService(
        data_dir=config.data_dir,
        documents=read_doc,
        seed=config.seed,
        qc_threshold=config.qc_threshold,
        manifest=manifest,
    )
    if config.pools_dir:
        for pool_file in sorted(Path(config.pools_dir).glob("*.pool")):
            service.load_pool(parse_pool(pool_file.read_bytes()))
    return service


class JudgingHTTPServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, config: ServiceConfig, service: JudgingService | None = None):
        self.config = config
        self.service = service if service is not None else build_service(config)
        super().__init__((config.host, config.port), _Handler)

    @property
    def address(self) -> str:
        host, port = self.server_address[:2]
        return f"http://{host}:{port}"

    def serve_background(self) -> threading.Thread:
        thread = threading.Thread(target=self.serve_forever, daemon=True)
        thread.start()
        return thread


class _Handler(BaseHTTPRequestHandler):
    server: JudgingHTTPServer

    # -- plumbing

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _json(self, status: int, payload: dict) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _bytes(self, status: int, body: bytes, content_type: str) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _error(self, status: int, message: str) -> None:
        self._json(status, {"error": message})

    def _token(self) -> str | None:
        return self.headers.get(AUTH_HEADER)

    def _allow(self, role: str) -> bool:
        config = self.server.config
        token = self._token()
        if role == "operator":
            ok = config.operator_token is None or token == config.operator_token
        else:
            ok = (
                config.assessor_token is None
                or token == config.assessor_token
                or (config.operator_token is not None and token == config.operator_token)
            )
        if not ok:
            self._error(401, "missing or invalid token")
        return ok

    # -- routing

    def do_GET(self):
        url = urlparse(self.path)
        parts = [unquote(p) for p in url.path.split("/") if p]
        try:
            if parts[:1] == ["assignments"] and len(parts) == 2:
                if self._allow("assessor"):
                    self._json(200, self.server.service.assessor_overview(parts[1]))
            elif parts[:1] == ["assignments"] and len(parts) == 4 and parts[3] == "next":
                if self._allow("assessor"):
                    self._next(parts[1], parts[2])
            elif parts[:1] == ["documents"] and len(parts) == 3 and parts[2] == "search":
                if self._allow("assessor"):
                    query = parse_qs(url.query).get("q", [""])[0]
                    self._search(parts[1], query)
            elif parts == ["export"]:
                if self._allow("operator"):
                    topic = parse_qs(url.query).get("topic", [None])[0]
                    data = self.server.service.export_judgments(topic)
                    self._bytes(200, data, "text/plain; charset=utf-8")
            elif parts == ["qc"]:
                if self._allow("operator"):
                    self._qc()
            else:
                self._static(parts)
        except KeyError as e:
            self._error(404, str(e))
        except ValueError as e:
            self._error(400, str(e))

    def do_POST(self):
        url = urlparse(self.path)
        parts = [p for p in url.path.split("/") if p]
        length = int(self.headers.get("Content-Length") or 0)
        body = self.rfile.read(length)
        try:
            if parts == ["judgments"]:
                if self._allow("assessor"):
                    self._submit(body)
            elif parts == ["pools"]:
                if self._allow("operator"):
                    pool = parse_pool(body)
                    self.server.service.load_pool(pool)
                    self._json(200, {"loaded": pool.topic_id, "size": pool.size})
            else:
                self._error(404, "not found")
        except KeyError as e:
            self._error(404, str(e))
        except ValueError as e:
            self._error(400, str(e))

    # -- handlers

    def _next(self, assessor_id: str, topic_id: str) -> None:
        nxt = self.server.service.next_unjudged(assessor_id, topic_id)
        if nxt is None:
            a = self.server.service.assignment(assessor_id, topic_id)
            judged, total = a.progress()
            self._json(200, {"done": True, "judged_count": judged, "total": total})
        else:
            self._json(200, nxt.payload())

    def _search(self, doc_id: str, query: str) -> None:
        matches = self.server.service.search_document(doc_id, query)
        self._json(200, {"doc_id": doc_id, "query": query, "matches": matches})

    def _submit(self, body: bytes) -> None:
        try:
            payload = json.loads(body.decode("utf-8"))
        except ValueError:
            self._error(400, "request body must be JSON")
            return
        missing = {"assessor_id", "topic_id", "doc_id", "level"} - set(payload)
        if missing:
            self._error(400, f"missing fields: {sorted(missing)}")
            return
        ack = self.server.service.submit_judgment(
            payload["assessor_id"],
            payload["topic_id"],
            payload["doc_id"],
            payload["level"],
        )
        self._json(200, ack)

    def _qc(self) -> None:
        report = self.server.service.qc_report()
        self._json(
            200,
            {
                "threshold": report.threshold,
                "total_noise_judgments": report.total_noise_judgments,
                "total_violations": report.total_violations,
                "assessors": [
                    {
                        "assessor_id": r.assessor_id,
                        "noise_judged": r.noise_judged,
                        "violations": r.violations,
                        "rate": r.rate,
                        "flagged": r.flagged,
                    }
                    for r in report.records
                ],
            },
        )

    def _static(self, parts: list[str]) -> None:
        ui_dir = self.server.config.ui_dir
        if ui_dir is None:
            self._error(404, "not found")
            return
        root = Path(ui_dir).resolve()
        rel = "/".join(parts) or "index.html"
        target = (root / rel).resolve()
        if root not in target.parents and target != root:
            self._error(404, "not found")
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            self._error(404, "not found")
            return
        content_type = _CONTENT_TYPES.get(target.suffix, "application/octet-stream")
        self._bytes(200, target.read_bytes(), content_type)


def serve(config: ServiceConfig) -> None:
    """Run the judging server until interrupted."""
    server = JudgingHTTPServer(config)
    try:
        server.serve_forever()
    finally:
        server.server_close()
