"""In-process HTTP stub implementing the prediction-service protocol.

Serves /v1/predict from a fixture backend and /v1/ner from a fixed set of
entity surface forms, so the HTTP client path can be exercised without a
real model. Responses are deterministic functions of the request body.
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .context_model import Candidate, FixtureBackend, MaskQuery


class StubPredictionServer:
    """Threaded HTTP server bound to 127.0.0.1 on an ephemeral port."""

    def __init__(self, backend: FixtureBackend,
                 entity_words: frozenset[str] = frozenset()) -> None:
        self.backend = backend
        self.entity_words = entity_words
        self._server = ThreadingHTTPServer(("127.0.0.1", 0), _make_handler(self))
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)

    @property
    def url(self) -> str:
        host, port = self._server.server_address[:2]
        return f"http://{host}:{port}"

    def start(self) -> None:
        self._thread.start()

    def stop(self) -> None:
        self._server.shutdown()
        self._server.server_close()

    def __enter__(self) -> StubPredictionServer:
        self.start()
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.stop()

    def handle_predict(self, body: dict) -> dict:
        query = MaskQuery(
            tokens=tuple(str(t) for t in body["tokens"]),
            mask_index=int(body["mask_index"]),
            top_k=int(body.get("top_k", 5000)),
        )
        candidates = self.backend.predict(query)
        return {"candidates": [{"word": c.word, "score": c.model_score}
                               for c in candidates]}

    def handle_ner(self, body: dict) -> dict:
        tokens = [str(t) for t in body["tokens"]]
        indices = [i for i, t in enumerate(tokens)
                   if t.lower() in self.entity_words]
        return {"entity_indices": indices}


def _make_handler(server: StubPredictionServer) -> type[BaseHTTPRequestHandler]:
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, fmt: str, *args: object) -> None:
            pass

        def _send(self, status: int, payload: dict) -> None:
            body = json.dumps(payload).encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def do_GET(self) -> None:
            if self.path == "/v1/health":
                self._send(200, {"status": "ok"})
            else:
                self._send(404, {"error": f"unknown path {self.path}"})

        def do_POST(self) -> None:
            length = int(self.headers.get("Content-Length", "0"))
            try:
                body = json.loads(self.rfile.read(length) or b"{}")
                if self.path == "/v1/predict":
                    self._send(200, server.handle_predict(body))
                elif self.path == "/v1/ner":
                    self._send(200, server.handle_ner(body))
                else:
                    self._send(404, {"error": f"unknown path {self.path}"})
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                self._send(400, {"error": str(exc)})

    return Handler


def fixture_stub(backend_or_entries: FixtureBackend | dict,
                 entity_words: frozenset[str] = frozenset()) -> StubPredictionServer:
    """Build a stub server from a FixtureBackend or a raw entries dict."""
    if isinstance(backend_or_entries, FixtureBackend):
        backend = backend_or_entries
    else:
        backend = FixtureBackend({
            key: tuple(Candidate(w, s) for w, s in pairs)
            for key, pairs in backend_or_entries.items()
        })
    return StubPredictionServer(backend, entity_words)
