"""WebSocket bridge: one live client drives one engine session.

Client frames are single JSON objects `{type, payload}` with type one of
command / expression / motor_imagery / emotion_metrics.  After every
applied event the server pushes a full state snapshot.  Any malformed or
unexpected frame gets an error frame and the connection is closed; a
second concurrent client is refused the same way.
"""

from __future__ import annotations

import json
import time
from pathlib import Path

from fastapi import FastAPI, WebSocket, WebSocketDisconnect

from .config import AppConfig
from .engine import Engine, EngineError
from .metrics import report_from_log
from .resources import build_engine

CLIENT_FRAME_TYPES = ("command", "expression", "motor_imagery", "emotion_metrics")


class ProtocolError(ValueError):
    pass


def _engine_input(frame: object) -> tuple[str, dict]:
    """Validate one client frame and map it onto an engine input event."""
    if not isinstance(frame, dict):
        raise ProtocolError("frame must be a JSON object")
    ftype = frame.get("type")
    payload = frame.get("payload")
    if ftype not in CLIENT_FRAME_TYPES:
        raise ProtocolError(f"unknown frame type: {ftype!r}")
    if not isinstance(payload, dict):
        raise ProtocolError("frame payload must be an object")
    if ftype == "emotion_metrics":
        return "emotion_update", {"metrics": payload}
    return ftype, payload


def create_app(cfg: AppConfig | None = None, log_path: str | None = None) -> FastAPI:
    cfg = cfg or AppConfig()
    app = FastAPI()
    active: dict[str, bool] = {"busy": False}

    async def _refuse(ws: WebSocket, message: str) -> None:
        await ws.send_text(json.dumps({"type": "error", "message": message}))
        await ws.close()

    @app.websocket("/ws")
    async def session(ws: WebSocket) -> None:
        await ws.accept()
        if active["busy"]:
            await _refuse(ws, "a session is already connected")
            return
        active["busy"] = True
        engine: Engine | None = None
        try:
            engine = build_engine(cfg, background_retrain=True)
            started = time.monotonic()
            await ws.send_text(json.dumps(engine.snapshot()))
            while True:
                raw = await ws.receive_text()
                try:
                    kind, payload = _engine_input(json.loads(raw))
                except (json.JSONDecodeError, ProtocolError) as exc:
                    await _refuse(ws, f"protocol violation: {exc}")
                    return
                t = int((time.monotonic() - started) * 1000.0)
                try:
                    engine.apply(kind, payload, t)
                except EngineError as exc:
                    await _refuse(ws, f"protocol violation: {exc}")
                    return
                await ws.send_text(json.dumps(engine.snapshot()))
        except WebSocketDisconnect:
            pass
        finally:
            active["busy"] = False
            if engine is not None:
                engine.learner.flush()
                if log_path:
                    engine.log.save(Path(log_path))
                if engine.log.events:
                    print(report_from_log(engine.log).to_text(), flush=True)

    return app


def serve(port: int, cfg: AppConfig | None = None, log_path: str | None = None) -> None:
    """Run the bridge with uvicorn until interrupted."""
    import uvicorn

    uvicorn.run(create_app(cfg, log_path), host="127.0.0.1", port=port, log_level="warning")
