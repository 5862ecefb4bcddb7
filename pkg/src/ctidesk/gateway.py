"""HTTP service: JSON API under /api plus static catalog and UI assets.

Sessions ride an http-only cookie (or an X-Session-Token header for
non-browser clients); the server-side session table enforces the idle
timeout. Authenticated responses carry no-store cache headers. Forbidden
and missing resources produce one indistinguishable 404 so identifier
guessing reveals nothing.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request, Response
from fastapi.responses import FileResponse, HTMLResponse, JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import share, timeline
from .catalog import (
    DEFINITIONS_FILENAME,
    VOCABULARIES_FILENAME,
    ObjectDefinition,
    load_catalog_dir,
)
from .config import GatewayConfig
from .errors import (
    BadCredentials,
    DuplicateIdentifier,
    EmptyName,
    Forbidden,
    MalformedJson,
    NotABundle,
    NotFound,
    PageOutOfRange,
    Retracted,
    SessionExpired,
    ShapeMismatch,
    UnknownKind,
    UnknownProfile,
    UnknownProperty,
    UnknownVocabulary,
    UsernameTaken,
    WeakPassword,
    WorkbenchError,
)
from .objects import (
    check_vocabulary,
    new_object,
    object_summary,
    object_to_dict,
    set_property,
)
from .store import Model, ObjectRecord, Page, Role, UserAccount, WorkspaceStore
from .timestamps import format_timestamp, utc_now

SESSION_COOKIE = "ctidesk_session"

_STATUS_BY_ERROR: list[tuple[type, int]] = [
    (BadCredentials, 401),
    (SessionExpired, 401),
    (NotFound, 404),
    (Forbidden, 403),
    (UsernameTaken, 409),
    (Retracted, 409),
    (WeakPassword, 400),
    (EmptyName, 400),
    (PageOutOfRange, 400),
    (UnknownKind, 400),
    (UnknownProperty, 400),
    (UnknownProfile, 400),
    (UnknownVocabulary, 404),
    (ShapeMismatch, 400),
    (DuplicateIdentifier, 400),
    (MalformedJson, 400),
    (NotABundle, 400),
]


class RegisterBody(BaseModel):
    username: str
    password: str
    profile: str


class LoginBody(BaseModel):
    username: str
    password: str


class NameBody(BaseModel):
    name: str


class AddObjectBody(BaseModel):
    kind: str


class PropertiesBody(BaseModel):
    properties: dict[str, Any]


class AdminUserBody(BaseModel):
    username: str
    password: str
    profile: str
    role: str = Role.USER.value


def create_app(config: GatewayConfig) -> FastAPI:
    catalog = load_catalog_dir(config.resolved_catalog_dir())  # refuse to start on bad data
    store = WorkspaceStore(
        config.db_path, catalog,
        page_size=config.page_size, idle_limit=config.idle_limit,
    )
    app = FastAPI(title="ctidesk", docs_url=None, redoc_url=None)
    app.state.store = store
    app.state.catalog = catalog
    app.state.config = config

    @app.exception_handler(WorkbenchError)
    async def workbench_error(request: Request, exc: WorkbenchError):
        for klass, status in _STATUS_BY_ERROR:
            if isinstance(exc, klass):
                return _error_response(status, exc.code, exc.message)
        return _error_response(500, exc.code, exc.message)

    def token_of(request: Request) -> str:
        return request.headers.get("X-Session-Token") or request.cookies.get(SESSION_COOKIE) or ""

    def caller(request: Request) -> UserAccount:
        return store.current_user(token_of(request), utc_now())

    @app.middleware("http")
    async def session_gate(request: Request, call_next):
        # Authentication runs before routing and body parsing, so a missing
        # session is always a 401, never a validation error.
        path = request.url.path
        if path.startswith("/api") and not _is_public(path):
            try:
                store.current_user(token_of(request), utc_now())
            except SessionExpired as exc:
                return _error_response(401, exc.code, exc.message)
        return await call_next(request)

    @app.middleware("http")
    async def no_cache(request: Request, call_next):
        response = await call_next(request)
        if request.url.path.startswith("/api"):
            response.headers["Cache-Control"] = "no-store"
        return response

    # ----------------------------------------------------------------- auth

    @app.post("/api/auth/register")
    def register(body: RegisterBody):
        account = store.register(body.username, body.password, body.profile)
        return _account_json(account)

    @app.post("/api/auth/login")
    def login(body: LoginBody, response: Response):
        session = store.authenticate(body.username, body.password, utc_now())
        account = store.current_user(session.token, utc_now())
        response.set_cookie(
            SESSION_COOKIE, session.token,
            httponly=True, samesite="lax", secure=config.secure_cookies,
        )
        return {"token": session.token, "user": _account_json(account)}

    @app.post("/api/auth/logout")
    def logout(request: Request, response: Response):
        store.logout(token_of(request))
        response.delete_cookie(SESSION_COOKIE)
        return {"ok": True}

    @app.get("/api/me")
    def me(request: Request):
        return _account_json(caller(request))

    # -------------------------------------------------------------- catalog

    @app.get("/api/catalog")
    def get_catalog(request: Request):
        return {
            "version": catalog.version,
            "definitions": [_definition_json(d) for d in catalog.list_kinds()],
        }

    @app.get("/api/catalog/vocabularies/{name}")
    def get_vocabulary(name: str):
        vocab = catalog.resolve_vocabulary(name)
        return {"name": vocab.name, "entries": list(vocab.entries)}

    # --------------------------------------------------------------- models

    @app.get("/api/models")
    def list_models(request: Request, page: int = 1):
        result = store.list_models(token_of(request), page, utc_now())
        return _page_json(result, _model_json)

    @app.post("/api/models", status_code=201)
    def create_model(request: Request, body: NameBody):
        model = store.create_model(token_of(request), body.name, utc_now())
        return _model_json(model)

    @app.get("/api/models/{model_id}")
    def fetch_model(request: Request, model_id: str):
        model, records = store.fetch_model(token_of(request), model_id, utc_now())
        return {"model": _model_json(model), "objects": [_record_json(r) for r in records]}

    @app.patch("/api/models/{model_id}")
    def rename_model(request: Request, model_id: str, body: NameBody):
        model = store.rename_model(token_of(request), model_id, body.name, utc_now())
        return _model_json(model)

    @app.get("/api/models/{model_id}/objects")
    def list_objects(request: Request, model_id: str, page: int = 1):
        result = store.list_objects(token_of(request), model_id, page, utc_now())
        return _page_json(result, _record_json)

    @app.post("/api/models/{model_id}/objects", status_code=201)
    def add_object(request: Request, model_id: str, body: AddObjectBody):
        now = utc_now()
        record = store.add_object(
            token_of(request), model_id, new_object(catalog, body.kind, now), now
        )
        return _record_json(record)

    # -------------------------------------------------------------- objects

    @app.put("/api/objects/{record_id}")
    def put_properties(request: Request, record_id: str, body: PropertiesBody):
        """Replace the full property map; vocabulary violations are stored
        and reported back as warnings rather than rejected."""
        now = utc_now()
        token = token_of(request)
        record = store.get_record(token, record_id, now)
        payload = record.payload
        for name in list(payload.properties):
            if name not in body.properties:
                payload = set_property(payload, catalog, name, None, now)
        warnings = []
        for name, value in body.properties.items():
            payload = set_property(payload, catalog, name, value, now)
            finding = check_vocabulary(catalog, payload, name)
            if finding is not None:
                warnings.append(_finding_json(finding))
        updated = store.update_object(token, record_id, payload, now)
        return {"record": _record_json(updated), "warnings": warnings}

    @app.post("/api/objects/{record_id}/retract")
    def retract(request: Request, record_id: str):
        return _record_json(store.retract_object(token_of(request), record_id, utc_now()))

    @app.post("/api/objects/{record_id}/restore")
    def restore(request: Request, record_id: str):
        return _record_json(store.restore_object(token_of(request), record_id, utc_now()))

    # ---------------------------------------------------------------- share

    @app.get("/api/models/{model_id}/validate")
    def validate(request: Request, model_id: str):
        report = share.validate_model(store, catalog, token_of(request), model_id, utc_now())
        return {
            "model_id": report.model_id,
            "checked_count": report.checked_count,
            "shareable": report.shareable,
            "findings": [_finding_json(f) for f in report.findings],
        }

    @app.get("/api/models/{model_id}/preview")
    def preview(request: Request, model_id: str):
        text = share.preview_model_json(store, token_of(request), model_id, utc_now())
        return Response(content=text, media_type="application/json")

    @app.get("/api/models/{model_id}/download")
    def download(request: Request, model_id: str):
        filename, media_type, payload = share.download_model_json(
            store, token_of(request), model_id, utc_now()
        )
        headers = {"Content-Disposition": f'attachment; filename="{filename}"'}
        return Response(content=payload, media_type=media_type, headers=headers)

    # ------------------------------------------------------------- timeline

    @app.get("/api/timeline")
    def get_timeline(request: Request):
        entries = timeline.build_timeline(store, token_of(request), utc_now())
        return [_entry_json(e) for e in entries]

    @app.get("/api/models/{model_id}/history")
    def get_history(request: Request, model_id: str):
        entries = timeline.model_history(store, token_of(request), model_id, utc_now())
        return [_entry_json(e) for e in entries]

    # ---------------------------------------------------------------- admin

    @app.get("/api/admin/users")
    def admin_list_users(request: Request):
        return [_account_json(u) for u in store.list_users(token_of(request), utc_now())]

    @app.post("/api/admin/users", status_code=201)
    def admin_create_user(request: Request, body: AdminUserBody):
        admin = caller(request)
        if admin.role is not Role.ADMINISTRATOR:
            raise Forbidden("administrator role required")
        account = store.register(body.username, body.password, body.profile, body.role)
        return _account_json(account)

    @app.post("/api/admin/users/{username}/deactivate")
    def admin_deactivate(request: Request, username: str):
        account = store.deactivate_user(token_of(request), username, utc_now())
        return _account_json(account)

    # --------------------------------------------------------------- static

    catalog_dir = config.resolved_catalog_dir()

    @app.get("/spec/" + DEFINITIONS_FILENAME)
    def spec_definitions():
        return FileResponse(catalog_dir / DEFINITIONS_FILENAME, media_type="application/json")

    @app.get("/spec/" + VOCABULARIES_FILENAME)
    def spec_vocabularies():
        return FileResponse(catalog_dir / VOCABULARIES_FILENAME, media_type="application/json")

    ui_dir = Path(config.ui_dir) if config.ui_dir else _default_ui_dir()
    if ui_dir and (ui_dir / "index.html").exists():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")
    else:
        @app.get("/", response_class=HTMLResponse)
        def index():
            return (
                "<!doctype html><title>ctidesk</title>"
                "<h1>ctidesk</h1><p>The API is live under <code>/api</code>. "
                "Build the analyst console (frontend/) to serve the UI here.</p>"
            )

    return app


def serve(config: GatewayConfig) -> None:
    """Run the service; raises SystemExit on bind/startup failure."""
    import uvicorn

    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")


_PUBLIC_API_PREFIXES = ("/api/auth/", "/api/catalog")


def _is_public(path: str) -> bool:
    return any(path == p.rstrip("/") or path.startswith(p) for p in _PUBLIC_API_PREFIXES)


def _default_ui_dir() -> Path | None:
    for candidate in (Path("frontend/dist"), Path(__file__).resolve().parents[2] / "frontend" / "dist"):
        if (candidate / "index.html").exists():
            return candidate
    return None


def _error_response(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def _account_json(account: UserAccount) -> dict:
    return {
        "username": account.username,
        "role": account.role.value,
        "profile": account.profile.value,
        "active": account.active,
    }


def _model_json(model: Model) -> dict:
    return {
        "model_id": model.model_id,
        "name": model.name,
        "profile": model.profile.value,
        "created_at": format_timestamp(model.created_at),
        "modified_at": format_timestamp(model.modified_at),
    }


def _record_json(record: ObjectRecord) -> dict:
    return {
        "record_id": record.record_id,
        "model_id": record.model_id,
        "kind": record.payload.kind,
        "summary": object_summary(record.payload),
        "object": object_to_dict(record.payload),
        "created_at": format_timestamp(record.created_at),
        "modified_at": format_timestamp(record.modified_at) if record.modified_at else None,
        "retracted": record.retracted,
    }


def _page_json(page: Page, item_json) -> dict:
    return {
        "items": [item_json(item) for item in page.items],
        "page_index": page.page_index,
        "page_count": page.page_count,
        "total_count": page.total_count,
        "page_size": page.page_size,
    }


def _entry_json(entry: timeline.TimelineEntry) -> dict:
    return {
        "record_id": entry.record_id,
        "model_id": entry.model_id,
        "model_name": entry.model_name,
        "object_kind": entry.object_kind,
        "object_summary": entry.object_summary,
        "modified_at": format_timestamp(entry.modified_at) if entry.modified_at else None,
        "colour_index": entry.colour_index,
        "retracted": entry.retracted,
    }


def _finding_json(finding) -> dict:
    return {
        "object_id": str(finding.object_id),
        "property": finding.property,
        "problem": finding.problem.value,
    }


def _definition_json(definition: ObjectDefinition) -> dict:
    def props(items):
        return [
            {
                "name": p.name,
                "shape": p.shape,
                "required": p.required,
                "vocabulary": p.vocabulary,
                "description": p.description,
            }
            for p in items
        ]

    return {
        "kind": definition.kind,
        "category": definition.category.value,
        "group": definition.group,
        "description": definition.description,
        "doc_link": definition.doc_link,
        "thumbnail": definition.thumbnail_ref,
        "common_properties": props(definition.common_properties),
        "specific_properties": props(definition.specific_properties),
    }
