#!/usr/bin/env python3
"""Record API fixtures for the console's unit tests.

Boots the real gateway on the seeded desk fixture and captures the
responses the console consumes, so the UI tests replay genuine contract
data instead of hand-written guesses. Re-run after changing the gateway
or the seed: `npm run record-fixtures`.
"""

import json
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from ctidesk.config import GatewayConfig
from ctidesk.gateway import create_app
from ctidesk.seed import password_for

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def save(name: str, payload) -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    (FIXTURES / name).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    print(f"recorded {name}")


def main() -> None:
    with tempfile.TemporaryDirectory() as tmp:
        db = Path(tmp) / "fixtures.db"
        config = GatewayConfig(db_path=str(db))
        app = create_app(config)

        from ctidesk.seed import seed_desk_fixture
        summary = seed_desk_fixture(app.state.store, app.state.catalog)

        client = TestClient(app)

        def login(username: str) -> dict:
            response = client.post("/api/auth/login", json={
                "username": username, "password": password_for(username)})
            response.raise_for_status()
            return {"X-Session-Token": response.json()["token"]}

        alice = login("alice")

        save("me.json", client.get("/api/me", headers=alice).json())
        catalog = client.get("/api/catalog").json()
        save("catalog.json", catalog)

        vocabularies = {}
        for definition in catalog["definitions"]:
            for section in ("common_properties", "specific_properties"):
                for prop in definition[section]:
                    name = prop.get("vocabulary")
                    if name and name not in vocabularies:
                        vocabularies[name] = client.get(
                            f"/api/catalog/vocabularies/{name}").json()["entries"]
        save("vocabularies.json", vocabularies)

        for page in (1, 2, 3):
            save(f"models-page{page}.json",
                 client.get(f"/api/models?page={page}", headers=alice).json())

        complete = summary["complete_model_id"]
        incomplete = summary["incomplete_model_id"]
        detail = client.get(f"/api/models/{complete}", headers=alice).json()
        save("model-detail-complete.json", detail)
        save("objects-page1.json",
             client.get(f"/api/models/{complete}/objects", headers=alice).json())
        threat_actor = next(r for r in detail["objects"] if r["kind"] == "threat-actor")
        save("record-threat-actor.json", threat_actor)

        save("timeline.json", client.get("/api/timeline", headers=alice).json())
        save("share-clean.json",
             client.get(f"/api/models/{complete}/validate", headers=alice).json())
        save("share-incomplete.json",
             client.get(f"/api/models/{incomplete}/validate", headers=alice).json())

        dave = login("dave")  # Analysts profile holds no models
        save("models-empty.json", client.get("/api/models", headers=dave).json())


if __name__ == "__main__":
    main()
