import time

import pytest
from fastapi.testclient import TestClient

from ctidesk.config import GatewayConfig
from ctidesk.gateway import SESSION_COOKIE, create_app

PASSWORD = "long-enough-pw"

# Method, path template, and whether a session is required: the full public
# surface, asserted as a matrix so no endpoint can drop out or bypass auth.
ENDPOINTS = [
    ("POST", "/api/auth/register", False),
    ("POST", "/api/auth/login", False),
    ("POST", "/api/auth/logout", False),
    ("GET", "/api/me", True),
    ("GET", "/api/catalog", False),
    ("GET", "/api/catalog/vocabularies/{vocab}", False),
    ("GET", "/api/models", True),
    ("POST", "/api/models", True),
    ("GET", "/api/models/{model_id}", True),
    ("PATCH", "/api/models/{model_id}", True),
    ("GET", "/api/models/{model_id}/objects", True),
    ("POST", "/api/models/{model_id}/objects", True),
    ("PUT", "/api/objects/{record_id}", True),
    ("POST", "/api/objects/{record_id}/retract", True),
    ("POST", "/api/objects/{record_id}/restore", True),
    ("GET", "/api/models/{model_id}/preview", True),
    ("GET", "/api/models/{model_id}/download", True),
    ("GET", "/api/models/{model_id}/validate", True),
    ("GET", "/api/timeline", True),
    ("GET", "/api/models/{model_id}/history", True),
    ("GET", "/api/admin/users", True),
    ("POST", "/api/admin/users", True),
    ("POST", "/api/admin/users/{username}/deactivate", True),
    ("GET", "/spec/STIX2.1.json", False),
    ("GET", "/spec/STIX2.1-vocabularies.json", False),
    ("GET", "/", False),
]


@pytest.fixture
def client(tmp_path):
    config = GatewayConfig(db_path=str(tmp_path / "gw.db"))
    app = create_app(config)
    with TestClient(app) as c:
        yield c


def _register_and_login(client, name="alice", profile="Analysts"):
    r = client.post("/api/auth/register",
                    json={"username": name, "password": PASSWORD, "profile": profile})
    assert r.status_code == 200, r.text
    r = client.post("/api/auth/login", json={"username": name, "password": PASSWORD})
    assert r.status_code == 200, r.text
    return r.json()["token"]


def _headers(token):
    return {"X-Session-Token": token}


def test_catalog_counts_through_service(client):
    body = client.get("/api/catalog").json()
    definitions = body["definitions"]
    assert len(definitions) == 18 + 2 + 36
    by_category = {}
    for d in definitions:
        by_category.setdefault(d["category"], []).append(d["kind"])
    assert len(by_category["SDO"]) == 18
    assert len(by_category["SRO"]) == 2
    assert len(by_category["SCO"]) == 36


def test_vocabulary_endpoint(client):
    body = client.get("/api/catalog/vocabularies/threat-actor-type-ov").json()
    assert "nation-state" in body["entries"]
    assert client.get("/api/catalog/vocabularies/nope-ov").status_code == 404


def test_anonymous_request_is_401(client):
    r = client.get("/api/models")
    assert r.status_code == 401


def test_endpoint_matrix(client):
    """Every declared endpoint exists; protected ones reject anonymity."""
    app_routes = {
        (method, route.path)
        for route in client.app.routes
        if hasattr(route, "methods") and route.methods
        for method in route.methods
    }
    fillers = {"vocab": "threat-actor-type-ov", "model_id": "x", "record_id": "x",
               "username": "x"}
    for method, template, needs_auth in ENDPOINTS:
        if template != "/":  # the root is a mounted static app or plain route
            matching = [p for m, p in app_routes if m == method and
                        p.replace("{vocab}", "{name}") == template.replace("{vocab}", "{name}")]
            assert matching, f"{method} {template} not registered"
        path = template
        for key, value in fillers.items():
            path = path.replace("{" + key + "}", value)
        response = client.request(method, path, json={})
        if needs_auth:
            assert response.status_code == 401, (method, path, response.status_code)
        else:
            assert response.status_code != 401, (method, path)


def test_login_sets_httponly_cookie(client):
    client.post("/api/auth/register",
                json={"username": "alice", "password": PASSWORD, "profile": "Analysts"})
    r = client.post("/api/auth/login", json={"username": "alice", "password": PASSWORD})
    cookie = r.headers.get("set-cookie", "")
    assert SESSION_COOKIE in cookie
    assert "httponly" in cookie.lower()


def test_cookie_session_works_without_header(client):
    _register_and_login(client)  # TestClient keeps the cookie jar
    assert client.get("/api/models").status_code == 200


def test_model_object_lifecycle(client):
    token = _register_and_login(client)
    h = _headers(token)

    model = client.post("/api/models", json={"name": "Probe"}, headers=h).json()
    record = client.post(f"/api/models/{model['model_id']}/objects",
                         json={"kind": "threat-actor"}, headers=h).json()
    assert record["kind"] == "threat-actor"
    assert record["modified_at"] is None

    r = client.put(f"/api/objects/{record['record_id']}",
                   json={"properties": {"name": "APT-X",
                                        "threat_actor_types": ["nation-state"]}},
                   headers=h)
    assert r.status_code == 200
    assert r.json()["warnings"] == []
    assert r.json()["record"]["object"]["name"] == "APT-X"

    r = client.put(f"/api/objects/{record['record_id']}",
                   json={"properties": {"name": "APT-X",
                                        "threat_actor_types": ["moon-pirates"]}},
                   headers=h)
    assert [w["problem"] for w in r.json()["warnings"]] == ["not-in-vocabulary"]

    r = client.put(f"/api/objects/{record['record_id']}",
                   json={"properties": {"confidence": "high"}}, headers=h)
    assert r.status_code == 400
    assert r.json()["code"] == "shape-mismatch"

    listed = client.get(f"/api/models/{model['model_id']}/objects", headers=h).json()
    assert listed["total_count"] == 1

    assert client.post(f"/api/objects/{record['record_id']}/retract", headers=h).json()["retracted"]
    preview = client.get(f"/api/models/{model['model_id']}/preview", headers=h).json()
    assert preview["objects"] == []
    assert not client.post(f"/api/objects/{record['record_id']}/restore", headers=h).json()["retracted"]

    renamed = client.patch(f"/api/models/{model['model_id']}",
                           json={"name": "Probe v2"}, headers=h).json()
    assert renamed["name"] == "Probe v2"


def test_validate_and_download(client):
    token = _register_and_login(client)
    h = _headers(token)
    model = client.post("/api/models", json={"name": "APT/probe:2024"}, headers=h).json()
    client.post(f"/api/models/{model['model_id']}/objects",
                json={"kind": "indicator"}, headers=h)
    report = client.get(f"/api/models/{model['model_id']}/validate", headers=h).json()
    assert report["shareable"] is False
    assert {f["property"] for f in report["findings"]} == {"pattern", "pattern_type", "valid_from"}

    r = client.get(f"/api/models/{model['model_id']}/download", headers=h)
    assert r.headers["content-disposition"] == 'attachment; filename="APT-probe-2024.json"'
    assert r.headers["content-type"].startswith("application/json")


def test_timeline_and_history_routes(client):
    token = _register_and_login(client)
    h = _headers(token)
    model = client.post("/api/models", json={"name": "T"}, headers=h).json()
    record = client.post(f"/api/models/{model['model_id']}/objects",
                         json={"kind": "indicator"}, headers=h).json()
    client.put(f"/api/objects/{record['record_id']}",
               json={"properties": {"name": "n1"}}, headers=h)
    timeline = client.get("/api/timeline", headers=h).json()
    assert len(timeline) == 1
    assert timeline[0]["colour_index"] == 0
    client.post(f"/api/objects/{record['record_id']}/retract", headers=h)
    assert client.get("/api/timeline", headers=h).json() == []
    history = client.get(f"/api/models/{model['model_id']}/history", headers=h).json()
    assert len(history) == 1 and history[0]["retracted"] is True


def test_guessing_resistance_identical_bodies(client):
    token = _register_and_login(client, "alice", "Analysts")
    h = _headers(token)
    model = client.post("/api/models", json={"name": "secret"}, headers=h).json()

    other = _register_and_login(client, "boss", "Management")
    oh = _headers(other)
    foreign = client.get(f"/api/models/{model['model_id']}", headers=oh)
    absent = client.get("/api/models/ffffffffffffffffffffffffffffffff", headers=oh)
    assert foreign.status_code == absent.status_code == 404
    assert foreign.content == absent.content


def test_no_cache_headers_on_api(client):
    token = _register_and_login(client)
    r = client.get("/api/models", headers=_headers(token))
    assert r.headers.get("cache-control") == "no-store"


def test_responses_never_leak_credentials(client):
    token = _register_and_login(client)
    for path in ("/api/me",):
        body = client.get(path, headers=_headers(token)).text.lower()
        assert "password" not in body
        assert "digest" not in body


def test_session_idle_timeout_over_http(tmp_path):
    config = GatewayConfig(db_path=str(tmp_path / "t.db"), session_idle_minutes=2 / 60)
    with TestClient(create_app(config)) as client:
        token = _register_and_login(client)
        assert client.get("/api/models", headers=_headers(token)).status_code == 200
        time.sleep(3)
        r = client.get("/api/models", headers=_headers(token))
        assert r.status_code == 401
        assert r.json()["code"] == "session-expired"


def test_register_always_creates_plain_users(client):
    body = client.post("/api/auth/register",
                       json={"username": "eve", "password": PASSWORD,
                             "profile": "Analysts", "role": "Administrator"}).json()
    assert body["role"] == "User"


def test_admin_endpoints(client, tmp_path):
    # First admin comes from the store bootstrap path, not the open API.
    store = client.app.state.store
    store.register("root", "admin-pw-999", "Management", "Administrator")
    r = client.post("/api/auth/login", json={"username": "root", "password": "admin-pw-999"})
    h = _headers(r.json()["token"])

    created = client.post("/api/admin/users",
                          json={"username": "carol", "password": PASSWORD,
                                "profile": "Analysts", "role": "User"}, headers=h)
    assert created.status_code == 201
    users = client.get("/api/admin/users", headers=h).json()
    assert {u["username"] for u in users} == {"root", "carol"}

    assert client.post("/api/admin/users/carol/deactivate", headers=h).json()["active"] is False

    token = _register_and_login(client, "alice")
    assert client.get("/api/admin/users", headers=_headers(token)).status_code == 403


def test_spec_files_served(client):
    defs = client.get("/spec/STIX2.1.json")
    assert defs.status_code == 200
    assert len(defs.json()["objects"]) == 56
    vocabs = client.get("/spec/STIX2.1-vocabularies.json")
    assert vocabs.status_code == 200


def test_root_serves_something(client):
    r = client.get("/")
    assert r.status_code == 200
