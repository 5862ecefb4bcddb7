"""Service configuration: JSON file plus environment overrides.

Environment variables win over the file; both are optional. Recognised
variables: PORT, HOST, DB_PATH (alias DB_URL), SESSION_IDLE_MINUTES,
PAGE_SIZE, CATALOG_DIR, UI_DIR, SECURE_COOKIES.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from datetime import timedelta
from pathlib import Path

from .catalog import bundled_data_dir


@dataclass
class GatewayConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    db_path: str = "ctidesk.db"
    session_idle_minutes: float = 10.0
    page_size: int = 10
    catalog_dir: str = ""
    ui_dir: str = ""
    secure_cookies: bool = False  # set when TLS terminates at a fronting proxy

    @property
    def idle_limit(self) -> timedelta:
        return timedelta(minutes=self.session_idle_minutes)

    def resolved_catalog_dir(self) -> Path:
        return Path(self.catalog_dir) if self.catalog_dir else bundled_data_dir()


_ENV_KEYS = {
    "HOST": ("host", str),
    "PORT": ("port", int),
    "DB_PATH": ("db_path", str),
    "DB_URL": ("db_path", str),
    "SESSION_IDLE_MINUTES": ("session_idle_minutes", float),
    "PAGE_SIZE": ("page_size", int),
    "CATALOG_DIR": ("catalog_dir", str),
    "UI_DIR": ("ui_dir", str),
    "SECURE_COOKIES": ("secure_cookies", lambda v: v.lower() in ("1", "true", "yes")),
}


def load_config(path: str | Path | None = None, env: dict | None = None) -> GatewayConfig:
    env = os.environ if env is None else env
    config = GatewayConfig()
    if path:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        for key, value in data.items():
            if hasattr(config, key):
                setattr(config, key, value)
    for env_key, (attr, convert) in _ENV_KEYS.items():
        if env_key in env and env[env_key] != "":
            setattr(config, attr, convert(env[env_key]))
    return config
