"""HTTP API over the engine, consumed by the web UI and scripts.

The service adds no semantics: every endpoint is a thin JSON/CSV shim over
the core modules, with policies held as immutable snapshots in an in-memory
store.  Uploading creates a new policy id; nothing mutates in place.
"""

from __future__ import annotations

import io
import threading
import zipfile
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, HTTPException, Query, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field
from starlette.datastructures import UploadFile

from . import analytics, engine, exchange, loggen
from .datasets import bundled_datasets
from .errors import AbacError, LogGenError, PolicyParseError, UnknownEntityError
from .model import Policy
from .parser import parse_policy

MAX_UPLOAD_BYTES = 10 * 1024 * 1024
DEFAULT_EVAL_LIMIT = 1000


@dataclass
class _Record:
    policy: Policy
    stats: analytics.PolicyStats | None = None


@dataclass
class PolicyStore:
    """Concurrent-read store of immutable policy snapshots."""

    persist_dir: Path | None = None
    _records: dict = field(default_factory=dict)
    _lock: threading.RLock = field(default_factory=threading.RLock)

    def add(self, policy: Policy, wanted_id: str | None = None) -> str:
        with self._lock:
            pid = wanted_id or policy.name or "policy"
            if wanted_id is not None and wanted_id in self._records:
                raise KeyError(wanted_id)
            suffix = 2
            unique = pid
            while unique in self._records:
                unique = f"{pid}-{suffix}"
                suffix += 1
            self._records[unique] = _Record(policy=policy)
            return unique

    def get(self, pid: str) -> Policy:
        with self._lock:
            record = self._records.get(pid)
        if record is None:
            raise HTTPException(status_code=404, detail=f"unknown policy id {pid!r}")
        return record.policy

    def stats(self, pid: str) -> analytics.PolicyStats:
        policy = self.get(pid)
        with self._lock:
            record = self._records[pid]
            if record.stats is None:
                record.stats = analytics.statistics(policy)
            return record.stats

    def delete(self, pid: str) -> None:
        with self._lock:
            if pid not in self._records:
                raise HTTPException(status_code=404, detail=f"unknown policy id {pid!r}")
            del self._records[pid]

    def ids(self) -> list:
        with self._lock:
            return [{"id": pid, "name": rec.policy.name} for pid, rec in self._records.items()]


class EvalRequest(BaseModel):
    user: str | None = None
    resource: str | None = None
    action: str | None = None
    limit: int = Field(default=DEFAULT_EVAL_LIMIT, ge=0)


class ExternalRulesRequest(BaseModel):
    rules: str
    permissions: bool = False
    limit: int | None = Field(default=None, ge=0)


class LogRequest(BaseModel):
    n: int = Field(gt=0)
    permit_ratio: float = Field(alias="permitRatio", ge=0.0, le=1.0)
    over_rate: float = Field(default=0.0, alias="overRate", ge=0.0, le=1.0)
    under_rate: float = Field(default=0.0, alias="underRate", ge=0.0, le=1.0)
    seed: int = Field(default=0, ge=0, lt=2**64)
    unique: bool = False
    emit_truth: bool = Field(default=False, alias="emitTruth")

    model_config = {"populate_by_name": True}


def create_app(
    store: PolicyStore | None = None,
    *,
    data_dir: Path | None = None,
    preload: bool = True,
    max_upload: int = MAX_UPLOAD_BYTES,
    ui_dir: Path | None = None,
) -> FastAPI:
    """Build the API app; bundled datasets preload under well-known ids."""
    app = FastAPI(title="abacbench", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    if store is None:
        store = PolicyStore(persist_dir=data_dir)
    if preload:
        for name, policy in bundled_datasets():
            store.add(policy, wanted_id=name)
    if data_dir is not None:
        data_dir.mkdir(parents=True, exist_ok=True)
        for path in sorted(data_dir.glob("*.abac")):
            policy = parse_policy(path.read_text(encoding="utf-8"), path.stem)
            store.add(policy, wanted_id=path.stem)
    app.state.store = store

    @app.get("/api/policies")
    def list_policies():
        return store.ids()

    @app.post("/api/policies", status_code=201)
    async def upload_policy(request: Request, name: str | None = None):
        text, filename = await _read_upload(request, max_upload)
        pid_hint = name or (Path(filename).stem if filename else None) or "policy"
        try:
            policy = parse_policy(text, pid_hint)
        except PolicyParseError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        pid = store.add(policy)
        if store.persist_dir is not None:
            (store.persist_dir / f"{pid}.abac").write_text(text, encoding="utf-8")
        return {"id": pid, "stats": store.stats(pid).to_json_dict()}

    @app.delete("/api/policies/{pid}", status_code=204)
    def delete_policy(pid: str):
        store.delete(pid)
        if store.persist_dir is not None:
            (store.persist_dir / f"{pid}.abac").unlink(missing_ok=True)

    @app.get("/api/policies/{pid}/stats")
    def policy_stats(pid: str):
        return store.stats(pid).to_json_dict()

    @app.post("/api/policies/{pid}/eval")
    def eval_request(pid: str, body: EvalRequest):
        policy = store.get(pid)
        try:
            if body.user and body.resource and body.action:
                decision = engine.evaluate(policy, body.user, body.resource, body.action)
                payload = {
                    "permitted": decision.permitted,
                    "matchingRules": decision.matching_rules,
                }
                if decision.note:
                    payload["note"] = decision.note
                return payload
            permissions = engine.query(
                policy, user=body.user or None, resource=body.resource or None, action=body.action or None
            )
        except UnknownEntityError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        shown = permissions[: body.limit]
        return {
            "permissions": [
                {"user": p.user, "resource": p.resource, "action": p.action} for p in shown
            ],
            "total": len(permissions),
            "limit": body.limit,
        }

    @app.post("/api/policies/{pid}/check")
    async def check_requests(pid: str, request: Request):
        policy = store.get(pid)
        text, _ = await _read_upload(request, max_upload)
        try:
            result = engine.check_requests_csv(policy, text)
        except AbacError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return Response(content=result, media_type="text/csv")

    @app.get("/api/policies/{pid}/coverage")
    def coverage(
        pid: str,
        permissions: bool = False,
        limit: int | None = Query(default=None, ge=0),
    ):
        policy = store.get(pid)
        return [
            c.to_json_dict(with_permissions=permissions, limit=limit)
            for c in analytics.rule_coverage(policy)
        ]

    @app.post("/api/policies/{pid}/coverage")
    def external_coverage(pid: str, body: ExternalRulesRequest):
        policy = store.get(pid)
        try:
            result = analytics.external_rule_coverage(policy, body.rules)
        except PolicyParseError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return [
            c.to_json_dict(with_permissions=body.permissions, limit=body.limit) for c in result
        ]

    @app.get("/api/policies/{pid}/heatmap")
    def heatmap(pid: str):
        return analytics.attribute_usage(store.get(pid)).to_json_dict()

    @app.get("/api/policies/{pid}/resource-access")
    def resource_access(pid: str):
        top, bottom = analytics.resource_access(store.get(pid))
        return {
            "top": [p.to_json_dict() for p in top],
            "bottom": [p.to_json_dict() for p in bottom],
        }

    @app.post("/api/policies/{pid}/logs")
    def generate_logs(pid: str, body: LogRequest):
        policy = store.get(pid)
        cfg = loggen.LogConfig(
            n=body.n,
            permit_ratio=body.permit_ratio,
            over_rate=body.over_rate,
            under_rate=body.under_rate,
            seed=body.seed,
            unique=body.unique,
        )
        try:
            entries = loggen.generate_logs(policy, cfg)
        except LogGenError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        csv_text = loggen.logs_to_csv(entries, with_truth=body.emit_truth)
        return Response(
            content=csv_text,
            media_type="text/csv",
            headers={"Content-Disposition": f'attachment; filename="{pid}-logs.csv"'},
        )

    @app.get("/api/policies/{pid}/export")
    def export(pid: str, format: str = Query(pattern="^(csv|canonical)$")):
        policy = store.get(pid)
        if format == "canonical":
            return Response(
                content=exchange.export_canonical(policy),
                media_type="application/json",
                headers={"Content-Disposition": f'attachment; filename="{pid}.canonical.json"'},
            )
        users_csv, resources_csv, rules_text = exchange.to_csv(policy)
        buffer = io.BytesIO()
        with zipfile.ZipFile(buffer, "w", zipfile.ZIP_DEFLATED) as zf:
            for arcname, text in (
                ("users.csv", users_csv),
                ("resources.csv", resources_csv),
                ("rules.abac", rules_text),
            ):
                zf.writestr(zipfile.ZipInfo(arcname), text)
        return Response(
            content=buffer.getvalue(),
            media_type="application/zip",
            headers={"Content-Disposition": f'attachment; filename="{pid}-csv.zip"'},
        )

    if ui_dir is not None and ui_dir.is_dir():
        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


async def _read_upload(request: Request, max_upload: int):
    """Policy/CSV payload from multipart (field `file`) or the raw body."""
    content_type = request.headers.get("content-type", "")
    if content_type.startswith("multipart/form-data"):
        form = await request.form()
        upload = form.get("file")
        if not isinstance(upload, UploadFile):
            raise HTTPException(status_code=400, detail="multipart upload needs a 'file' field")
        data = await upload.read()
        filename = upload.filename
    else:
        data = await request.body()
        filename = None
    if len(data) > max_upload:
        raise HTTPException(status_code=413, detail=f"upload exceeds {max_upload} bytes")
    if not data.strip():
        raise HTTPException(status_code=400, detail="empty upload")
    try:
        return data.decode("utf-8"), filename
    except UnicodeDecodeError as exc:
        raise HTTPException(status_code=400, detail="upload is not valid UTF-8") from exc
