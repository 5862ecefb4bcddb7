"""Desk-scale demo fixture: 2 profiles x 3 users, 25 models, ~60 objects.

Deterministic by construction — fixed usernames, fixed base time, one
minute between consecutive actions — so listing order, pagination, and
timeline output are stable across runs. Used by the acceptance suite and
by `ctidesk seed` for manual exploration.
"""

from __future__ import annotations

from datetime import datetime, timedelta, timezone

from .catalog import SpecCatalog
from .objects import StixObject, new_object, set_property
from .store import Profile, WorkspaceStore

BASE_TIME = datetime(2024, 1, 15, 9, 0, 0, tzinfo=timezone.utc)

USERS = {
    Profile.CYBER_SECURITY_MANAGERS: ("alice", "bob", "carol"),
    Profile.ANALYSTS: ("dave", "erin", "frank"),
}

MODEL_NAMES = [
    "Coordinated phishing campaign",
    "Unverified beacon traffic",
    "Substation RTU probe",
    "Credential stuffing burst",
    "Rogue access point sweep",
    "Supplier portal anomaly",
    "HMI login anomalies",
    "Firmware tamper suspicion",
    "DNS tunnelling review",
    "VPN brute force watch",
    "Metering data drift",
    "Spoofed vendor invoices",
    "USB drop incident",
    "Legacy SCADA exposure",
    "Insider export spike",
    "Ransom note sighting",
    "Botnet C2 overlap",
    "Cloud key leakage",
    "SSO redirect abuse",
    "Printer fleet beaconing",
    "Grid telemetry gaps",
    "Wi-Fi deauth storm",
    "Payroll redirect fraud",
    "Third-party scanner hits",
    "Mail relay abuse",
]

VARIETY_KINDS = [
    "indicator", "malware", "threat-actor", "identity", "tool",
    "attack-pattern", "campaign", "infrastructure", "url", "ipv4-addr",
    "domain-name", "file", "observed-data", "vulnerability", "course-of-action",
]


def password_for(username: str) -> str:
    return f"{username}-passphrase"


def seed_desk_fixture(store: WorkspaceStore, catalog: SpecCatalog) -> dict:
    """Build the fixture; returns ids and counts the tests key off."""
    clock = _Clock(BASE_TIME)
    tokens: dict[str, str] = {}
    for profile, names in USERS.items():
        for name in names:
            store.register(name, password_for(name), profile)
            tokens[name] = store.authenticate(name, password_for(name), clock.tick()).token

    # Long-lived sessions for seeding: refresh activity as the clock advances.
    def acting(name: str) -> str:
        store.current_user(tokens[name], clock.now())
        return tokens[name]

    owners = ["alice", "bob", "carol"]
    model_ids: list[str] = []
    object_count = 0
    retracted_record_id = None
    untimed_record_id = None

    for index, model_name in enumerate(MODEL_NAMES):
        owner = owners[index % 3]
        token = acting(owner)
        model = store.create_model(token, model_name, clock.tick())
        model_ids.append(model.model_id)

        if index == 0:
            # Showcase model: 11 complete objects, every one of them edited.
            for kind in ("threat-actor", "identity", "identity", "indicator",
                         "indicator", "malware", "attack-pattern", "tool",
                         "observed-data", "relationship", "relationship"):
                record = _add_complete(store, catalog, token, model.model_id, kind, clock)
                store.update_object(token, record.record_id,
                                    record.payload, clock.tick())
                object_count += 1
        elif index == 1:
            # Known-incomplete model: a bare indicator plus one finished URL.
            bare = store.add_object(token, model.model_id,
                                    new_object(catalog, "indicator", clock.tick()),
                                    clock.now())
            store.update_object(token, bare.record_id, bare.payload, clock.tick())
            _add_complete(store, catalog, token, model.model_id, "url", clock)
            object_count += 2
        else:
            for offset in range(2):
                kind = VARIETY_KINDS[(index * 2 + offset) % len(VARIETY_KINDS)]
                record = _add_complete(store, catalog, token, model.model_id, kind, clock)
                object_count += 1
                if offset == 0:
                    # First object gets an edit (timed); second stays untimed.
                    editor = acting(owners[(index + 1) % 3])  # profile-mate edits
                    store.update_object(editor, record.record_id,
                                        record.payload, clock.tick())
                elif index == 2:
                    store.retract_object(token, record.record_id, clock.tick())
                    retracted_record_id = record.record_id
                elif untimed_record_id is None:
                    untimed_record_id = record.record_id

    return {
        "tokens": tokens,
        "usernames": {p.value: list(names) for p, names in USERS.items()},
        "model_ids": model_ids,
        "complete_model_id": model_ids[0],
        "incomplete_model_id": model_ids[1],
        "retracted_record_id": retracted_record_id,
        "untimed_record_id": untimed_record_id,
        "user_count": sum(len(n) for n in USERS.values()),
        "model_count": len(model_ids),
        "object_count": object_count,
        "base_time": BASE_TIME,
        "end_time": clock.now(),
    }


def fill_required(catalog: SpecCatalog, object: StixObject, now: datetime) -> StixObject:
    """Set every required property of `object` to a plausible value."""
    definition = catalog.lookup_definition(object.kind)
    for prop in definition.properties():
        if not prop.required or prop.name in object.properties:
            continue
        object = set_property(object, catalog, prop.name,
                              _value_for(catalog, prop, object.kind, now), now)
    return object


def _value_for(catalog: SpecCatalog, prop, kind: str, now: datetime):
    if prop.shape == "vocabulary":
        return catalog.resolve_vocabulary(prop.vocabulary).entries[0]
    if prop.shape == "list-of-string":
        if prop.vocabulary:
            return [catalog.resolve_vocabulary(prop.vocabulary).entries[0]]
        return [f"{kind}--00000000-0000-4000-8000-000000000000"
                if prop.name.endswith("_refs") or prop.name == "object_refs"
                else f"{prop.name}-entry"]
    if prop.shape == "integer":
        return 1
    if prop.shape == "boolean":
        return True
    if prop.shape == "timestamp":
        return now
    if prop.shape == "structured":
        return {"value": f"{kind} {prop.name}"}
    if prop.name == "name":
        return f"{kind} fixture"
    if prop.name == "pattern":
        return "[url:value = 'http://198.51.100.7/login']"
    if prop.name.endswith("_ref"):
        return "indicator--00000000-0000-4000-8000-000000000000"
    return f"{kind} {prop.name}"


def _add_complete(store, catalog, token, model_id, kind, clock):
    payload = fill_required(catalog, new_object(catalog, kind, clock.tick()), clock.now())
    return store.add_object(token, model_id, payload, clock.tick())


class _Clock:
    """Strictly increasing clock for reproducible fixtures.

    One-second steps keep the whole seeded history well inside the default
    session idle limit while still giving every action a distinct stamp.
    """

    def __init__(self, start: datetime):
        self._now = start

    def tick(self) -> datetime:
        self._now += timedelta(seconds=1)
        return self._now

    def now(self) -> datetime:
        return self._now
