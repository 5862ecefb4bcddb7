"""Durable workspace persistence: users, sessions, models, object records.

Backed by an embedded SQLite database. Every query binds its parameters —
nothing is ever spliced into SQL text — and all access is serialised through
one lock, so readers never observe a half-written record and conflicting
writes to the same record apply whole-payload, last-write-wins.

Access control lives here, not in the HTTP layer: users see the models of
their own profile; administrators may additionally read (never edit) every
profile. Lookups of foreign or nonexistent identifiers raise the same
NotFound so guessed identifiers reveal nothing.
"""

from __future__ import annotations

import hashlib
import hmac
import json
import secrets
import sqlite3
import threading
import uuid
from dataclasses import dataclass
from datetime import datetime, timedelta
from enum import Enum
from pathlib import Path
from typing import Generic, TypeVar

from .catalog import SpecCatalog
from .errors import (
    BadCredentials,
    EmptyName,
    Forbidden,
    NotFound,
    PageOutOfRange,
    Retracted,
    SessionExpired,
    UnknownProfile,
    UsernameTaken,
    WeakPassword,
)
from .objects import StixObject, object_from_dict, object_to_dict
from .timestamps import format_timestamp, parse_timestamp, utc_now

MIN_PASSWORD_LENGTH = 8
PBKDF2_ITERATIONS = 100_000
DEFAULT_PAGE_SIZE = 10
DEFAULT_IDLE_LIMIT = timedelta(minutes=10)

T = TypeVar("T")


class Role(str, Enum):
    USER = "User"
    ADMINISTRATOR = "Administrator"


class Profile(str, Enum):
    """The five fixed sharing groups; members see and edit each other's models."""

    CYBER_SECURITY_MANAGERS = "Cyber-security managers"
    NETWORK_ADMINISTRATORS = "Network administrators"
    MANAGEMENT = "Management"
    ANALYSTS = "Analysts"
    EXTERNAL_USERS = "External users"

    @classmethod
    def parse(cls, value: "str | Profile") -> "Profile":
        try:
            return cls(value)
        except ValueError:
            raise UnknownProfile(f"unknown profile {value!r}") from None


@dataclass(frozen=True)
class UserAccount:
    user_id: str
    username: str
    role: Role
    profile: Profile
    active: bool = True


@dataclass(frozen=True)
class Session:
    token: str
    user_id: str
    last_activity: datetime


@dataclass(frozen=True)
class Model:
    model_id: str
    name: str
    owner: str
    profile: Profile
    created_at: datetime
    modified_at: datetime


@dataclass(frozen=True)
class ObjectRecord:
    record_id: str
    model_id: str
    payload: StixObject
    created_at: datetime
    modified_at: datetime | None  # None until the record is first edited
    retracted: bool


@dataclass(frozen=True)
class Page(Generic[T]):
    items: list[T]
    page_index: int
    total_count: int
    page_size: int

    @property
    def page_count(self) -> int:
        return max(1, -(-self.total_count // self.page_size))


_SCHEMA = """
CREATE TABLE IF NOT EXISTS users (
    user_id         TEXT PRIMARY KEY,
    username        TEXT NOT NULL UNIQUE,
    password_salt   BLOB NOT NULL,
    password_digest BLOB NOT NULL,
    role            TEXT NOT NULL,
    profile         TEXT NOT NULL,
    active          INTEGER NOT NULL DEFAULT 1,
    created_at      TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS sessions (
    token         TEXT PRIMARY KEY,
    user_id       TEXT NOT NULL REFERENCES users(user_id),
    last_activity TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS models (
    model_id    TEXT PRIMARY KEY,
    name        TEXT NOT NULL,
    owner       TEXT NOT NULL REFERENCES users(user_id),
    profile     TEXT NOT NULL,
    created_at  TEXT NOT NULL,
    modified_at TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS objects (
    record_id   TEXT PRIMARY KEY,
    model_id    TEXT NOT NULL REFERENCES models(model_id),
    payload     TEXT NOT NULL,
    created_at  TEXT NOT NULL,
    modified_at TEXT,
    retracted   INTEGER NOT NULL DEFAULT 0
);
CREATE INDEX IF NOT EXISTS idx_models_profile ON models(profile, modified_at);
CREATE INDEX IF NOT EXISTS idx_objects_model ON objects(model_id);
"""


class WorkspaceStore:
    """One handle per process; safe for concurrent request handlers."""

    def __init__(
        self,
        path: str | Path,
        catalog: SpecCatalog,
        page_size: int = DEFAULT_PAGE_SIZE,
        idle_limit: timedelta = DEFAULT_IDLE_LIMIT,
    ):
        self.catalog = catalog
        self.page_size = page_size
        self.idle_limit = idle_limit
        self._lock = threading.RLock()
        self._conn = sqlite3.connect(str(path), check_same_thread=False)
        self._conn.row_factory = sqlite3.Row
        with self._lock, self._conn:
            self._conn.executescript(_SCHEMA)

    def close(self) -> None:
        with self._lock:
            self._conn.close()

    # ------------------------------------------------------------ accounts

    def register(
        self,
        username: str,
        password: str,
        profile: str | Profile,
        role: str | Role = Role.USER,
    ) -> UserAccount:
        profile = Profile.parse(profile)
        role = Role(role)
        if not username or not username.strip():
            raise EmptyName("username must be nonempty")
        if len(password) < MIN_PASSWORD_LENGTH:
            raise WeakPassword(f"password must be at least {MIN_PASSWORD_LENGTH} characters")
        salt = secrets.token_bytes(16)
        digest = _digest(password, salt)
        user_id = uuid.uuid4().hex
        with self._lock, self._conn:
            row = self._conn.execute(
                "SELECT 1 FROM users WHERE username = ?", (username,)
            ).fetchone()
            if row is not None:
                raise UsernameTaken(f"username {username!r} is taken")
            self._conn.execute(
                "INSERT INTO users (user_id, username, password_salt, password_digest,"
                " role, profile, active, created_at) VALUES (?, ?, ?, ?, ?, ?, 1, ?)",
                (user_id, username, salt, digest, role.value, profile.value,
                 format_timestamp(utc_now())),
            )
        return UserAccount(user_id=user_id, username=username, role=role, profile=profile)

    def authenticate(self, username: str, password: str, now: datetime) -> Session:
        """Fresh session on success; one identical error for every failure."""
        with self._lock, self._conn:
            row = self._conn.execute(
                "SELECT * FROM users WHERE username = ? AND active = 1", (username,)
            ).fetchone()
            if row is None or not hmac.compare_digest(
                _digest(password, row["password_salt"]), row["password_digest"]
            ):
                raise BadCredentials()
            token = secrets.token_urlsafe(32)
            self._conn.execute(
                "INSERT INTO sessions (token, user_id, last_activity) VALUES (?, ?, ?)",
                (token, row["user_id"], format_timestamp(now)),
            )
        return Session(token=token, user_id=row["user_id"], last_activity=now)

    def logout(self, token: str) -> None:
        with self._lock, self._conn:
            self._conn.execute("DELETE FROM sessions WHERE token = ?", (token,))

    def current_user(self, token: str, now: datetime) -> UserAccount:
        """Validate the session, refresh its idle window, return the caller."""
        with self._lock, self._conn:
            row = self._conn.execute(
                "SELECT s.token, s.last_activity, u.* FROM sessions s"
                " JOIN users u ON u.user_id = s.user_id WHERE s.token = ?",
                (token or "",),
            ).fetchone()
            if row is None or not row["active"]:
                raise SessionExpired()
            last = parse_timestamp(row["last_activity"])
            if now - last > self.idle_limit:
                self._conn.execute("DELETE FROM sessions WHERE token = ?", (token,))
                raise SessionExpired()
            self._conn.execute(
                "UPDATE sessions SET last_activity = ? WHERE token = ?",
                (format_timestamp(now), token),
            )
        return _user(row)

    def list_users(self, token: str, now: datetime) -> list[UserAccount]:
        caller = self.current_user(token, now)
        _require_admin(caller)
        with self._lock:
            rows = self._conn.execute(
                "SELECT * FROM users ORDER BY username"
            ).fetchall()
        return [_user(r) for r in rows]

    def deactivate_user(self, token: str, username: str, now: datetime) -> UserAccount:
        caller = self.current_user(token, now)
        _require_admin(caller)
        if caller.username == username:
            raise Forbidden("administrators cannot deactivate themselves")
        with self._lock, self._conn:
            row = self._conn.execute(
                "SELECT * FROM users WHERE username = ?", (username,)
            ).fetchone()
            if row is None:
                raise NotFound()
            self._conn.execute(
                "UPDATE users SET active = 0 WHERE username = ?", (username,)
            )
            self._conn.execute(
                "DELETE FROM sessions WHERE user_id = ?", (row["user_id"],)
            )
        return _user(row, active=False)

    def admin_exists(self) -> bool:
        with self._lock:
            row = self._conn.execute(
                "SELECT 1 FROM users WHERE role = ? AND active = 1",
                (Role.ADMINISTRATOR.value,),
            ).fetchone()
        return row is not None

    # -------------------------------------------------------------- models

    def create_model(self, token: str, name: str, now: datetime) -> Model:
        user = self.current_user(token, now)
        if not name or not name.strip():
            raise EmptyName("model name must be nonempty")
        model_id = uuid.uuid4().hex
        stamp = format_timestamp(now)
        with self._lock, self._conn:
            self._conn.execute(
                "INSERT INTO models (model_id, name, owner, profile, created_at,"
                " modified_at) VALUES (?, ?, ?, ?, ?, ?)",
                (model_id, name, user.user_id, user.profile.value, stamp, stamp),
            )
        return Model(model_id=model_id, name=name, owner=user.user_id,
                     profile=user.profile, created_at=now, modified_at=now)

    def rename_model(self, token: str, model_id: str, new_name: str, now: datetime) -> Model:
        user = self.current_user(token, now)
        if not new_name or not new_name.strip():
            raise EmptyName("model name must be nonempty")
        with self._lock, self._conn:
            row = self._model_row(user, model_id, write=True)
            self._conn.execute(
                "UPDATE models SET name = ?, modified_at = ? WHERE model_id = ?",
                (new_name, format_timestamp(now), model_id),
            )
            return self._fetch_model_value(model_id)

    def list_models(self, token: str, page_index: int, now: datetime) -> Page[Model]:
        user = self.current_user(token, now)
        with self._lock:
            if user.role is Role.ADMINISTRATOR:
                rows = self._conn.execute(
                    "SELECT * FROM models ORDER BY modified_at DESC, model_id DESC"
                ).fetchall()
            else:
                rows = self._conn.execute(
                    "SELECT * FROM models WHERE profile = ?"
                    " ORDER BY modified_at DESC, model_id DESC",
                    (user.profile.value,),
                ).fetchall()
        return _paginate([_model(r) for r in rows], page_index, self.page_size)

    def fetch_model(self, token: str, model_id: str, now: datetime) -> tuple[Model, list[ObjectRecord]]:
        """The model plus its active (non-retracted) records."""
        user = self.current_user(token, now)
        with self._lock:
            row = self._model_row(user, model_id, write=False)
            records = self._records_of_model(model_id, include_retracted=False)
        return _model(row), records

    def model_for_profile(self, user: UserAccount, model_id: str, write: bool = False) -> Model:
        with self._lock:
            return _model(self._model_row(user, model_id, write=write))

    # ------------------------------------------------------------- records

    def add_object(self, token: str, model_id: str, object: StixObject, now: datetime) -> ObjectRecord:
        user = self.current_user(token, now)
        record_id = uuid.uuid4().hex
        stamp = format_timestamp(now)
        with self._lock, self._conn:
            self._model_row(user, model_id, write=True)
            self._conn.execute(
                "INSERT INTO objects (record_id, model_id, payload, created_at,"
                " modified_at, retracted) VALUES (?, ?, ?, ?, NULL, 0)",
                (record_id, model_id, _dump_payload(object), stamp),
            )
            self._conn.execute(
                "UPDATE models SET modified_at = ? WHERE model_id = ?",
                (stamp, model_id),
            )
        return ObjectRecord(record_id=record_id, model_id=model_id, payload=object,
                            created_at=now, modified_at=None, retracted=False)

    def update_object(self, token: str, record_id: str, object: StixObject, now: datetime) -> ObjectRecord:
        user = self.current_user(token, now)
        with self._lock, self._conn:
            row = self._record_row(user, record_id, write=True)
            if row["retracted"]:
                raise Retracted(record_id)
            stamp = format_timestamp(now)
            self._conn.execute(
                "UPDATE objects SET payload = ?, modified_at = ? WHERE record_id = ?",
                (_dump_payload(object), stamp, record_id),
            )
            self._conn.execute(
                "UPDATE models SET modified_at = ? WHERE model_id = ?",
                (stamp, row["model_id"]),
            )
            return self._fetch_record_value(record_id)

    def retract_object(self, token: str, record_id: str, now: datetime) -> ObjectRecord:
        return self._set_retracted(token, record_id, True, now)

    def restore_object(self, token: str, record_id: str, now: datetime) -> ObjectRecord:
        return self._set_retracted(token, record_id, False, now)

    def list_objects(self, token: str, model_id: str, page_index: int, now: datetime) -> Page[ObjectRecord]:
        """Dashboard listing: retracted records stay visible for restore."""
        user = self.current_user(token, now)
        with self._lock:
            self._model_row(user, model_id, write=False)
            records = self._records_of_model(model_id, include_retracted=True)
        return _paginate(records, page_index, self.page_size)

    def get_record(self, token: str, record_id: str, now: datetime) -> ObjectRecord:
        user = self.current_user(token, now)
        with self._lock:
            row = self._record_row(user, record_id, write=False)
        return self._record(row)

    # ---------------------------------------------- unsessioned snapshots
    # Used by the timeline and share engines (and the offline CLI) after
    # access has been established; the gateway never calls these directly.

    def profile_records(self, profile: Profile, include_retracted: bool = False) -> list[tuple[ObjectRecord, Model]]:
        with self._lock:
            model_rows = self._conn.execute(
                "SELECT * FROM models WHERE profile = ?", (profile.value,)
            ).fetchall()
            models = {r["model_id"]: _model(r) for r in model_rows}
            pairs: list[tuple[ObjectRecord, Model]] = []
            for model_id, model in models.items():
                for record in self._records_of_model(model_id, include_retracted):
                    pairs.append((record, model))
        return pairs

    def model_records(self, model_id: str, include_retracted: bool = False) -> tuple[Model, list[ObjectRecord]]:
        with self._lock:
            model = self._fetch_model_value(model_id)
            records = self._records_of_model(model_id, include_retracted)
        return model, records

    def table_counts(self) -> dict[str, int]:
        """Row counts per table; used by integrity checks and diagnostics."""
        with self._lock:
            return {
                table: self._conn.execute(f"SELECT COUNT(*) AS n FROM {table}").fetchone()["n"]
                for table in ("users", "sessions", "models", "objects")
            }

    # ------------------------------------------------------------ internal

    def _set_retracted(self, token: str, record_id: str, flag: bool, now: datetime) -> ObjectRecord:
        user = self.current_user(token, now)
        with self._lock, self._conn:
            row = self._record_row(user, record_id, write=True)
            stamp = format_timestamp(now)
            self._conn.execute(
                "UPDATE objects SET retracted = ?, modified_at = ? WHERE record_id = ?",
                (1 if flag else 0, stamp, record_id),
            )
            self._conn.execute(
                "UPDATE models SET modified_at = ? WHERE model_id = ?",
                (stamp, row["model_id"]),
            )
            return self._fetch_record_value(record_id)

    def _model_row(self, user: UserAccount, model_id: str, write: bool) -> sqlite3.Row:
        row = self._conn.execute(
            "SELECT * FROM models WHERE model_id = ?", (model_id or "",)
        ).fetchone()
        if row is None:
            raise NotFound()
        if row["profile"] != user.profile.value:
            if user.role is Role.ADMINISTRATOR:
                if write:
                    raise Forbidden("administrators read foreign profiles but cannot edit them")
            else:
                # Same error as a nonexistent id: guessing reveals nothing.
                raise NotFound()
        return row

    def _record_row(self, user: UserAccount, record_id: str, write: bool) -> sqlite3.Row:
        row = self._conn.execute(
            "SELECT * FROM objects WHERE record_id = ?", (record_id or "",)
        ).fetchone()
        if row is None:
            raise NotFound()
        self._model_row(user, row["model_id"], write=write)
        return row

    def _records_of_model(self, model_id: str, include_retracted: bool) -> list[ObjectRecord]:
        # Dashboard order: last touch first, never-edited records by
        # creation time; record id breaks exact ties deterministically.
        if include_retracted:
            rows = self._conn.execute(
                "SELECT * FROM objects WHERE model_id = ?"
                " ORDER BY COALESCE(modified_at, created_at) DESC, record_id DESC",
                (model_id,),
            ).fetchall()
        else:
            rows = self._conn.execute(
                "SELECT * FROM objects WHERE model_id = ? AND retracted = 0"
                " ORDER BY COALESCE(modified_at, created_at) DESC, record_id DESC",
                (model_id,),
            ).fetchall()
        return [self._record(r) for r in rows]

    def _fetch_model_value(self, model_id: str) -> Model:
        row = self._conn.execute(
            "SELECT * FROM models WHERE model_id = ?", (model_id,)
        ).fetchone()
        if row is None:
            raise NotFound()
        return _model(row)

    def _fetch_record_value(self, record_id: str) -> ObjectRecord:
        row = self._conn.execute(
            "SELECT * FROM objects WHERE record_id = ?", (record_id,)
        ).fetchone()
        if row is None:
            raise NotFound()
        return self._record(row)

    def _record(self, row: sqlite3.Row) -> ObjectRecord:
        return ObjectRecord(
            record_id=row["record_id"],
            model_id=row["model_id"],
            payload=object_from_dict(self.catalog, json.loads(row["payload"])),
            created_at=parse_timestamp(row["created_at"]),
            modified_at=parse_timestamp(row["modified_at"]) if row["modified_at"] else None,
            retracted=bool(row["retracted"]),
        )


def _digest(password: str, salt: bytes) -> bytes:
    return hashlib.pbkdf2_hmac("sha256", password.encode("utf-8"), salt, PBKDF2_ITERATIONS)


def _require_admin(user: UserAccount) -> None:
    if user.role is not Role.ADMINISTRATOR:
        raise Forbidden("administrator role required")


def _user(row: sqlite3.Row, active: bool | None = None) -> UserAccount:
    return UserAccount(
        user_id=row["user_id"],
        username=row["username"],
        role=Role(row["role"]),
        profile=Profile(row["profile"]),
        active=bool(row["active"]) if active is None else active,
    )


def _model(row: sqlite3.Row) -> Model:
    return Model(
        model_id=row["model_id"],
        name=row["name"],
        owner=row["owner"],
        profile=Profile(row["profile"]),
        created_at=parse_timestamp(row["created_at"]),
        modified_at=parse_timestamp(row["modified_at"]),
    )


def _paginate(items: list[T], page_index: int, page_size: int) -> Page[T]:
    total = len(items)
    page_count = max(1, -(-total // page_size))
    if page_index < 1 or page_index > page_count:
        raise PageOutOfRange(page_index, page_count)
    start = (page_index - 1) * page_size
    return Page(items=items[start:start + page_size], page_index=page_index,
                total_count=total, page_size=page_size)


def _dump_payload(object: StixObject) -> str:
    return json.dumps(object_to_dict(object), separators=(",", ":"))
