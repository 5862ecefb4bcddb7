"""STIX object instances, validation, and bundle serialisation.

Objects are plain immutable values: a kind, an identifier, and a property
map checked against the catalog. Mutation helpers return new objects, so
they are safe to share across request handlers.

Validation here is the internal pre-share check: missing required
parameters, stored values whose shape does not match the catalog, and
values outside their vocabulary. It deliberately does not attempt STIX
graph well-formedness.
"""

from __future__ import annotations

import json
import uuid
from dataclasses import dataclass, field, replace
from datetime import datetime
from enum import Enum
from typing import Any, Mapping

from .catalog import Category, PropertyDefinition, SpecCatalog
from .errors import (
    DuplicateIdentifier,
    MalformedJson,
    NotABundle,
    ShapeMismatch,
    UnknownKind,
    UnknownProperty,
)
from .timestamps import format_timestamp, parse_timestamp, truncate_millis

BUNDLE_KIND = "bundle"

# Values a property may hold: text, integer, boolean, timestamp,
# list of text, or a nested map.
PropertyValue = Any


@dataclass(frozen=True)
class StixIdentifier:
    kind: str
    uuid: uuid.UUID

    def __str__(self) -> str:
        return f"{self.kind}--{self.uuid}"

    @classmethod
    def generate(cls, kind: str) -> "StixIdentifier":
        return cls(kind=kind, uuid=uuid.uuid4())

    @classmethod
    def parse(cls, text: str) -> "StixIdentifier":
        kind, sep, raw = text.partition("--")
        if not sep or not kind:
            raise ValueError(f"not a STIX identifier: {text!r}")
        return cls(kind=kind, uuid=uuid.UUID(raw))


@dataclass(frozen=True)
class StixObject:
    id: StixIdentifier
    kind: str
    properties: dict[str, PropertyValue] = field(default_factory=dict)
    created: datetime | None = None
    modified: datetime | None = None


@dataclass(frozen=True)
class Bundle:
    id: StixIdentifier
    objects: tuple[StixObject, ...]


class Problem(str, Enum):
    MISSING_REQUIRED = "missing-required"
    WRONG_SHAPE = "wrong-shape"
    NOT_IN_VOCABULARY = "not-in-vocabulary"


@dataclass(frozen=True)
class ValidationFinding:
    object_id: StixIdentifier
    property: str
    problem: Problem

    def render(self) -> str:
        return f"{self.object_id} {self.property} {self.problem.value}"


def new_object(catalog: SpecCatalog, kind: str, now: datetime) -> StixObject:
    """Fresh object of `kind` with a random identifier and no properties.

    Only SDO/SRO kinds carry object-level created/modified timestamps;
    observables rely on the workspace record timestamps instead.
    """
    definition = catalog.lookup_definition(kind)
    timed = definition.category in (Category.SDO, Category.SRO)
    return StixObject(
        id=StixIdentifier.generate(kind),
        kind=kind,
        properties={},
        created=truncate_millis(now) if timed else None,
        modified=None,
    )


def set_property(
    object: StixObject,
    catalog: SpecCatalog,
    name: str,
    value: PropertyValue,
    now: datetime,
) -> StixObject:
    """Store one property value, checked against its catalog definition.

    Unknown names and shape mismatches are rejected. An explicit empty
    value (None, "", [], {}) clears the property, mirroring a cleared
    input field. Vocabulary membership is not enforced here; analysts may
    record partial evidence and are warned at share time (see
    check_vocabulary / validate_object).
    """
    definition = catalog.lookup_definition(object.kind)
    prop = definition.find_property(name)
    if prop is None:
        raise UnknownProperty(object.kind, name)

    properties = dict(object.properties)
    if _is_empty(value):
        properties.pop(name, None)
    else:
        properties[name] = _coerce(prop, value)

    modified = object.modified
    if definition.category in (Category.SDO, Category.SRO):
        modified = truncate_millis(now)
    return replace(object, properties=properties, modified=modified)


def check_vocabulary(
    catalog: SpecCatalog, object: StixObject, name: str
) -> ValidationFinding | None:
    """Vocabulary check for one stored property; None when it passes."""
    definition = catalog.lookup_definition(object.kind)
    prop = definition.find_property(name)
    if prop is None or prop.vocabulary is None or name not in object.properties:
        return None
    if _vocabulary_violated(catalog, prop, object.properties[name]):
        return ValidationFinding(object.id, name, Problem.NOT_IN_VOCABULARY)
    return None


def validate_object(object: StixObject, catalog: SpecCatalog) -> list[ValidationFinding]:
    """All findings for one object, in catalog property order.

    Exactly one missing-required finding per absent required property; one
    wrong-shape or not-in-vocabulary finding per stored offending value.
    An empty list means the object passes the internal validation.
    """
    definition = catalog.lookup_definition(object.kind)
    findings: list[ValidationFinding] = []
    for prop in definition.properties():
        if prop.name not in object.properties:
            if prop.required:
                findings.append(ValidationFinding(object.id, prop.name, Problem.MISSING_REQUIRED))
            continue
        value = object.properties[prop.name]
        if not _shape_ok(prop.shape, value):
            findings.append(ValidationFinding(object.id, prop.name, Problem.WRONG_SHAPE))
        elif prop.vocabulary is not None and _vocabulary_violated(catalog, prop, value):
            findings.append(ValidationFinding(object.id, prop.name, Problem.NOT_IN_VOCABULARY))
    return findings


def object_to_dict(object: StixObject) -> dict[str, Any]:
    """JSON-ready view: type, id, created, modified, then properties A-Z."""
    doc: dict[str, Any] = {"type": object.kind, "id": str(object.id)}
    if object.created is not None:
        doc["created"] = format_timestamp(object.created)
    if object.modified is not None:
        doc["modified"] = format_timestamp(object.modified)
    for name in sorted(object.properties):
        doc[name] = _value_to_json(object.properties[name])
    return doc


def object_from_dict(catalog: SpecCatalog, doc: Mapping[str, Any]) -> StixObject:
    """Inverse of object_to_dict; rejects unknown kinds and property names."""
    if not isinstance(doc, Mapping) or not isinstance(doc.get("type"), str):
        raise NotABundle("object entry without a 'type'")
    kind = doc["type"]
    definition = catalog.lookup_definition(kind)
    try:
        identifier = StixIdentifier.parse(doc["id"])
    except (KeyError, ValueError, TypeError) as exc:
        raise NotABundle(f"object entry with a bad 'id': {exc}") from None
    if identifier.kind != kind:
        raise NotABundle(f"identifier {identifier} does not match type {kind!r}")

    created = modified = None
    properties: dict[str, PropertyValue] = {}
    for name, raw in doc.items():
        if name in ("type", "id"):
            continue
        if name == "created":
            created = _parse_ts(raw)
            continue
        if name == "modified":
            modified = _parse_ts(raw)
            continue
        prop = definition.find_property(name)
        if prop is None:
            raise UnknownProperty(kind, name)
        properties[name] = _value_from_json(prop, raw)
    return StixObject(id=identifier, kind=kind, properties=properties,
                      created=created, modified=modified)


def serialize_bundle(objects: list[StixObject], bundle_id: StixIdentifier) -> str:
    """Bundle JSON: {"type":"bundle","id":...,"objects":[...]}.

    Output is byte-deterministic for the same inputs. Object identifiers
    must be unique.
    """
    if bundle_id.kind != BUNDLE_KIND:
        raise ValueError(f"bundle identifier has kind {bundle_id.kind!r}")
    seen: set[str] = set()
    for object in objects:
        key = str(object.id)
        if key in seen:
            raise DuplicateIdentifier(key)
        seen.add(key)
    doc = {
        "type": BUNDLE_KIND,
        "id": str(bundle_id),
        "objects": [object_to_dict(o) for o in objects],
    }
    return json.dumps(doc, separators=(",", ":"))


def parse_bundle(catalog: SpecCatalog, text: str) -> Bundle:
    """Parse bundle JSON back into objects; inverse of serialize_bundle."""
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, TypeError) as exc:
        raise MalformedJson(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("type") != BUNDLE_KIND:
        raise NotABundle("top-level object is not a bundle")
    try:
        bundle_id = StixIdentifier.parse(doc["id"])
    except (KeyError, ValueError, TypeError) as exc:
        raise NotABundle(f"bundle without a valid 'id': {exc}") from None
    if bundle_id.kind != BUNDLE_KIND or not isinstance(doc.get("objects"), list):
        raise NotABundle("bundle must carry a bundle id and an 'objects' list")

    objects: list[StixObject] = []
    seen: set[str] = set()
    for entry in doc["objects"]:
        object = object_from_dict(catalog, entry)
        key = str(object.id)
        if key in seen:
            raise DuplicateIdentifier(key)
        seen.add(key)
        objects.append(object)
    return Bundle(id=bundle_id, objects=tuple(objects))


def object_summary(object: StixObject) -> str:
    """Short human label: the kind, plus the name property when present."""
    name = object.properties.get("name")
    if isinstance(name, str) and name:
        return f"{object.kind}: {name}"
    return object.kind


# ------------------------------------------------------------------ helpers

def _is_empty(value: PropertyValue) -> bool:
    if value is None:
        return True
    if isinstance(value, bool) or isinstance(value, (int, float)):
        return False
    return value == "" or value == [] or value == {}


def _coerce(prop: PropertyDefinition, value: PropertyValue) -> PropertyValue:
    """Set-time shape enforcement; timestamps also accept RFC 3339 text."""
    if prop.shape == "timestamp":
        if isinstance(value, datetime):
            return truncate_millis(value)
        if isinstance(value, str):
            try:
                return parse_timestamp(value)
            except ValueError:
                raise ShapeMismatch(prop.name, "timestamp", repr(value)) from None
        raise ShapeMismatch(prop.name, "timestamp", type(value).__name__)
    if not _shape_ok(prop.shape, value):
        raise ShapeMismatch(prop.name, prop.shape, type(value).__name__)
    if isinstance(value, tuple):
        return list(value)
    return value


def _shape_ok(shape: str, value: PropertyValue) -> bool:
    if shape in ("string", "vocabulary"):
        return isinstance(value, str)
    if shape == "integer":
        return isinstance(value, int) and not isinstance(value, bool)
    if shape == "boolean":
        return isinstance(value, bool)
    if shape == "timestamp":
        return isinstance(value, datetime)
    if shape == "list-of-string":
        return isinstance(value, (list, tuple)) and all(isinstance(v, str) for v in value)
    if shape == "structured":
        return isinstance(value, dict) and all(isinstance(k, str) for k in value)
    return False


def _vocabulary_violated(catalog: SpecCatalog, prop: PropertyDefinition, value: PropertyValue) -> bool:
    entries = catalog.resolve_vocabulary(prop.vocabulary).entries
    if isinstance(value, str):
        return value not in entries
    if isinstance(value, (list, tuple)):
        return any(isinstance(v, str) and v not in entries for v in value)
    return False


def _value_to_json(value: PropertyValue) -> Any:
    if isinstance(value, datetime):
        return format_timestamp(value)
    if isinstance(value, (list, tuple)):
        return [_value_to_json(v) for v in value]
    if isinstance(value, dict):
        return {k: _value_to_json(v) for k, v in value.items()}
    return value


def _value_from_json(prop: PropertyDefinition, raw: Any) -> PropertyValue:
    if prop.shape == "timestamp" and isinstance(raw, str):
        try:
            return parse_timestamp(raw)
        except ValueError:
            return raw  # kept as-is; validation reports the wrong shape
    return raw


def _parse_ts(raw: Any) -> datetime:
    try:
        return parse_timestamp(raw)
    except ValueError as exc:
        raise NotABundle(f"bad timestamp: {exc}") from None
