import json

import pytest

from ctidesk import Profile, StixIdentifier, new_object, parse_bundle
from ctidesk.errors import NotFound
from ctidesk.seed import fill_required
from ctidesk.share import (
    bundle_filename,
    bundle_for_model,
    download_model_json,
    preview_model_json,
    validate_model,
)

from oracles import missing_required


def _login(store, clock, name="alice", profile=Profile.ANALYSTS):
    store.register(name, "long-enough-pw", profile)
    return store.authenticate(name, "long-enough-pw", clock.tick()).token


def _complete(store, catalog, token, model_id, kind, clock):
    payload = fill_required(catalog, new_object(catalog, kind, clock.tick()), clock.tick())
    return store.add_object(token, model_id, payload, clock.tick())


def test_eleven_complete_objects_shareable(store, catalog, clock):
    token = _login(store, clock)
    model = store.create_model(token, "Showcase", clock.tick())
    kinds = ["threat-actor", "identity", "indicator", "malware", "tool",
             "attack-pattern", "campaign", "report", "note", "opinion", "observed-data"]
    for kind in kinds:
        _complete(store, catalog, token, model.model_id, kind, clock)
    report = validate_model(store, catalog, token, model.model_id, clock.tick())
    assert report.checked_count == 11
    assert report.findings == []
    assert report.shareable


def test_incomplete_indicator_matches_oracle(store, catalog, clock, definitions_path):
    token = _login(store, clock)
    model = store.create_model(token, "Incomplete", clock.tick())
    store.add_object(token, model.model_id,
                     new_object(catalog, "indicator", clock.tick()), clock.tick())
    report = validate_model(store, catalog, token, model.model_id, clock.tick())
    assert not report.shareable
    assert {f.property for f in report.findings} == missing_required(
        definitions_path, "indicator", set()
    )


def test_only_retracted_records_means_vacuously_shareable(store, catalog, clock):
    token = _login(store, clock)
    model = store.create_model(token, "Ghost", clock.tick())
    record = store.add_object(token, model.model_id,
                              new_object(catalog, "indicator", clock.tick()), clock.tick())
    store.retract_object(token, record.record_id, clock.tick())
    report = validate_model(store, catalog, token, model.model_id, clock.tick())
    assert report.checked_count == 0
    assert report.shareable


def test_findings_equal_union_of_per_object_findings(store, catalog, clock):
    from ctidesk import validate_object

    token = _login(store, clock)
    model = store.create_model(token, "Mixed", clock.tick())
    for kind in ("indicator", "malware", "report"):
        store.add_object(token, model.model_id,
                         new_object(catalog, kind, clock.tick()), clock.tick())
    report = validate_model(store, catalog, token, model.model_id, clock.tick())
    _, records = store.model_records(model.model_id)
    expected = []
    for record in records:
        expected.extend(validate_object(record.payload, catalog))
    assert report.findings == expected


def test_preview_empty_model(store, catalog, clock):
    token = _login(store, clock)
    model = store.create_model(token, "Empty", clock.tick())
    doc = json.loads(preview_model_json(store, token, model.model_id, clock.tick()))
    assert doc["type"] == "bundle"
    assert doc["objects"] == []


def test_preview_skips_retracted(store, catalog, clock):
    token = _login(store, clock)
    model = store.create_model(token, "Three", clock.tick())
    _complete(store, catalog, token, model.model_id, "url", clock)
    _complete(store, catalog, token, model.model_id, "mutex", clock)
    doomed = _complete(store, catalog, token, model.model_id, "domain-name", clock)
    store.retract_object(token, doomed.record_id, clock.tick())
    doc = json.loads(preview_model_json(store, token, model.model_id, clock.tick()))
    assert len(doc["objects"]) == 2


def test_preview_twice_identical_except_bundle_id(store, catalog, clock):
    token = _login(store, clock)
    model = store.create_model(token, "Stable", clock.tick())
    _complete(store, catalog, token, model.model_id, "url", clock)
    first = json.loads(preview_model_json(store, token, model.model_id, clock.tick()))
    second = json.loads(preview_model_json(store, token, model.model_id, clock.tick()))
    assert first["id"] != second["id"]
    first.pop("id"); second.pop("id")
    assert first == second


def test_download_names_and_bytes(store, catalog, clock):
    token = _login(store, clock)
    model = store.create_model(token, "APT-probe", clock.tick())
    filename, media_type, payload = download_model_json(
        store, token, model.model_id, clock.tick()
    )
    assert filename == "APT-probe.json"
    assert media_type == "application/json"
    json.loads(payload)


def test_filename_sanitisation():
    assert bundle_filename("APT-probe") == "APT-probe.json"
    assert bundle_filename("a/b:c") == "a-b-c.json"
    for hostile in ("../../etc/passwd", "CON\\aux", "weird name?!", "日本語", ""):
        sanitized = bundle_filename(hostile)
        assert sanitized.endswith(".json")
        assert not set(sanitized) & set('/\\:?*"<>| ')
        assert not sanitized.startswith(".")


def test_download_equals_preview_for_same_bundle_id(store, catalog, clock):
    token = _login(store, clock)
    model = store.create_model(token, "Same", clock.tick())
    _complete(store, catalog, token, model.model_id, "url", clock)
    fixed = StixIdentifier.generate("bundle")
    once = bundle_for_model(store, model.model_id, fixed)
    twice = bundle_for_model(store, model.model_id, fixed)
    assert once == twice


def test_shareable_model_bundle_parses(store, catalog, clock):
    token = _login(store, clock)
    model = store.create_model(token, "Clean", clock.tick())
    for kind in ("indicator", "threat-actor", "relationship"):
        _complete(store, catalog, token, model.model_id, kind, clock)
    report = validate_model(store, catalog, token, model.model_id, clock.tick())
    assert report.shareable
    text = preview_model_json(store, token, model.model_id, clock.tick())
    bundle = parse_bundle(catalog, text)
    assert len(bundle.objects) == 3


def test_share_ops_hide_foreign_models(store, catalog, clock):
    token_a = _login(store, clock, "alice", Profile.ANALYSTS)
    token_b = _login(store, clock, "boss", Profile.MANAGEMENT)
    model = store.create_model(token_a, "Private", clock.tick())
    with pytest.raises(NotFound):
        validate_model(store, catalog, token_b, model.model_id, clock.tick())
    with pytest.raises(NotFound):
        preview_model_json(store, token_b, model.model_id, clock.tick())
    with pytest.raises(NotFound):
        download_model_json(store, token_b, model.model_id, clock.tick())
