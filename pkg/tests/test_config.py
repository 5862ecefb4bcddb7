import json
from datetime import timedelta

from ctidesk.catalog import bundled_data_dir
from ctidesk.config import GatewayConfig, load_config


def test_defaults():
    config = load_config(env={})
    assert config.port == 8000
    assert config.page_size == 10
    assert config.session_idle_minutes == 10
    assert config.idle_limit == timedelta(minutes=10)
    assert config.resolved_catalog_dir() == bundled_data_dir()


def test_file_then_env_overrides(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({
        "port": 9001, "db_path": "/tmp/from-file.db", "page_size": 25,
    }), encoding="utf-8")
    env = {"PORT": "9002", "SESSION_IDLE_MINUTES": "0.5", "SECURE_COOKIES": "true"}
    config = load_config(path, env=env)
    assert config.port == 9002  # env wins over file
    assert config.db_path == "/tmp/from-file.db"
    assert config.page_size == 25
    assert config.idle_limit == timedelta(seconds=30)
    assert config.secure_cookies is True


def test_db_url_alias(tmp_path):
    config = load_config(env={"DB_URL": str(tmp_path / "x.db")})
    assert config.db_path.endswith("x.db")


def test_page_size_reaches_the_store(tmp_path):
    from fastapi.testclient import TestClient

    from ctidesk.gateway import create_app

    config = GatewayConfig(db_path=str(tmp_path / "p.db"), page_size=3)
    with TestClient(create_app(config)) as client:
        client.post("/api/auth/register", json={
            "username": "alice", "password": "long-enough-pw", "profile": "Analysts"})
        token = client.post("/api/auth/login", json={
            "username": "alice", "password": "long-enough-pw"}).json()["token"]
        headers = {"X-Session-Token": token}
        for i in range(7):
            client.post("/api/models", json={"name": f"m{i}"}, headers=headers)
        page = client.get("/api/models?page=1", headers=headers).json()
        assert page["page_size"] == 3
        assert len(page["items"]) == 3
        assert page["page_count"] == 3
