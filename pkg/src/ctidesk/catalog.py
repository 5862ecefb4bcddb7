"""STIX 2.1 definition catalog.

The catalog is loaded from two JSON files compiled from the official OASIS
specification: ``STIX2.1.json`` (object definitions) and
``STIX2.1-vocabularies.json`` (open vocabularies). Everything else in the
system validates against this data, never against hard-coded rules, so a
future STIX revision only needs new data files.

Definitions file format::

    {
      "version": "2.1",
      "counts": {"SDO": 18, "SRO": 2, "SCO": 36},   # optional, enforced
      "objects": [
        {
          "kind": "threat-actor",
          "category": "SDO",             # SDO | SRO | SCO
          "group": "adversary",          # affinity group, free-form
          "description": "...",
          "doc_link": "https://...",
          "thumbnail": "threat-actor",   # optional, defaults to kind
          "common_properties":   [{"name", "shape", "required", "vocabulary"?, "description"}],
          "specific_properties": [...]
        }, ...
      ]
    }

Vocabularies file format::

    {"vocabularies": [{"name": "...", "entries": ["..."]}]}

Property shapes: string, integer, boolean, timestamp, list-of-string,
structured, vocabulary. A "vocabulary" property must name its vocabulary;
a "list-of-string" property may also name one, constraining each element.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path

from .errors import (
    DanglingVocabularyReference,
    FileUnreadable,
    MalformedCatalog,
    UnknownKind,
    UnknownVocabulary,
)

DEFINITIONS_FILENAME = "STIX2.1.json"
VOCABULARIES_FILENAME = "STIX2.1-vocabularies.json"

SHAPES = frozenset(
    ["string", "integer", "boolean", "timestamp", "list-of-string", "structured", "vocabulary"]
)

_KIND_RE = re.compile(r"^[a-z0-9]+(-[a-z0-9]+)*$")


class Category(str, Enum):
    SDO = "SDO"
    SRO = "SRO"
    SCO = "SCO"


@dataclass(frozen=True)
class PropertyDefinition:
    name: str
    shape: str
    required: bool = False
    vocabulary: str | None = None
    description: str = ""


@dataclass(frozen=True)
class Vocabulary:
    name: str
    entries: tuple[str, ...]


@dataclass(frozen=True)
class ObjectDefinition:
    kind: str
    category: Category
    group: str
    description: str
    doc_link: str
    common_properties: tuple[PropertyDefinition, ...]
    specific_properties: tuple[PropertyDefinition, ...]
    thumbnail_ref: str

    def properties(self) -> tuple[PropertyDefinition, ...]:
        return self.common_properties + self.specific_properties

    def find_property(self, name: str) -> PropertyDefinition | None:
        for prop in self.properties():
            if prop.name == name:
                return prop
        return None

    def required_property_names(self) -> list[str]:
        return [prop.name for prop in self.properties() if prop.required]


@dataclass(frozen=True)
class SpecCatalog:
    version: str
    definitions: dict[str, ObjectDefinition] = field(hash=False)
    vocabularies: dict[str, Vocabulary] = field(hash=False)

    def list_kinds(self, category: Category | None = None) -> list[ObjectDefinition]:
        """All definitions, alphabetical by kind, optionally one category."""
        selected = (
            d for d in self.definitions.values()
            if category is None or d.category == category
        )
        return sorted(selected, key=lambda d: d.kind)

    def lookup_definition(self, kind: str) -> ObjectDefinition:
        try:
            return self.definitions[kind]
        except KeyError:
            raise UnknownKind(kind) from None

    def resolve_vocabulary(self, name: str) -> Vocabulary:
        try:
            return self.vocabularies[name]
        except KeyError:
            raise UnknownVocabulary(name) from None

    def count(self, category: Category) -> int:
        return sum(1 for d in self.definitions.values() if d.category == category)


def bundled_data_dir() -> Path:
    """Directory holding the catalog files shipped with the package."""
    return Path(resources.files("ctidesk").joinpath("data"))  # type: ignore[arg-type]


def load_catalog(definitions_file: str | Path, vocabularies_file: str | Path) -> SpecCatalog:
    """Load and cross-check the two catalog files.

    Raises FileUnreadable for missing/unreadable files, MalformedCatalog for
    syntax or format problems, DanglingVocabularyReference when a property
    names a vocabulary the vocabulary file does not define.
    """
    raw_defs = _read_json(definitions_file)
    raw_vocabs = _read_json(vocabularies_file)

    vocabularies = _parse_vocabularies(str(vocabularies_file), raw_vocabs)
    definitions = _parse_definitions(str(definitions_file), raw_defs, vocabularies)

    catalog = SpecCatalog(
        version=str(raw_defs.get("version", "")),
        definitions=definitions,
        vocabularies=vocabularies,
    )
    _check_counts(str(definitions_file), raw_defs, catalog)
    return catalog


def load_catalog_dir(directory: str | Path) -> SpecCatalog:
    directory = Path(directory)
    return load_catalog(directory / DEFINITIONS_FILENAME, directory / VOCABULARIES_FILENAME)


def load_bundled_catalog() -> SpecCatalog:
    return load_catalog_dir(bundled_data_dir())


def _read_json(path: str | Path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileUnreadable(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedCatalog(str(path), f"invalid JSON: {exc}") from exc


def _parse_vocabularies(location: str, raw) -> dict[str, Vocabulary]:
    if not isinstance(raw, dict) or not isinstance(raw.get("vocabularies"), list):
        raise MalformedCatalog(location, "expected an object with a 'vocabularies' list")
    vocabularies: dict[str, Vocabulary] = {}
    for item in raw["vocabularies"]:
        if not isinstance(item, dict) or not item.get("name") or not isinstance(item.get("entries"), list):
            raise MalformedCatalog(location, f"bad vocabulary entry: {item!r}")
        name = item["name"]
        entries = item["entries"]
        if name in vocabularies:
            raise MalformedCatalog(location, f"duplicate vocabulary {name!r}")
        if not entries:
            raise MalformedCatalog(location, f"vocabulary {name!r} has no entries")
        if len(entries) != len(set(entries)):
            raise MalformedCatalog(location, f"vocabulary {name!r} has duplicate entries")
        if not all(isinstance(e, str) for e in entries):
            raise MalformedCatalog(location, f"vocabulary {name!r} has non-string entries")
        vocabularies[name] = Vocabulary(name=name, entries=tuple(entries))
    return vocabularies


def _parse_property(location: str, kind: str, raw, vocabularies: dict[str, Vocabulary]) -> PropertyDefinition:
    where = f"{kind}.{raw.get('name') if isinstance(raw, dict) else raw!r}"
    if not isinstance(raw, dict) or not raw.get("name") or not isinstance(raw.get("shape"), str):
        raise MalformedCatalog(location, f"bad property entry at {where}")
    shape = raw["shape"]
    if shape not in SHAPES:
        raise MalformedCatalog(location, f"{where}: unknown shape {shape!r}")
    vocabulary = raw.get("vocabulary")
    if shape == "vocabulary" and not vocabulary:
        raise MalformedCatalog(location, f"{where}: vocabulary shape without a vocabulary name")
    if vocabulary is not None and shape not in ("vocabulary", "list-of-string"):
        raise MalformedCatalog(location, f"{where}: shape {shape!r} cannot carry a vocabulary")
    if vocabulary is not None and vocabulary not in vocabularies:
        raise DanglingVocabularyReference(f"{kind}.{raw['name']}", vocabulary)
    return PropertyDefinition(
        name=raw["name"],
        shape=shape,
        required=bool(raw.get("required", False)),
        vocabulary=vocabulary,
        description=str(raw.get("description", "")),
    )


def _parse_definitions(location: str, raw, vocabularies: dict[str, Vocabulary]) -> dict[str, ObjectDefinition]:
    if not isinstance(raw, dict) or not isinstance(raw.get("objects"), list):
        raise MalformedCatalog(location, "expected an object with an 'objects' list")
    definitions: dict[str, ObjectDefinition] = {}
    for item in raw["objects"]:
        if not isinstance(item, dict):
            raise MalformedCatalog(location, f"bad object entry: {item!r}")
        kind = item.get("kind")
        if not isinstance(kind, str) or not _KIND_RE.match(kind) or kind == "bundle":
            raise MalformedCatalog(location, f"bad object kind: {kind!r}")
        if kind in definitions:
            raise MalformedCatalog(location, f"duplicate kind {kind!r}")
        try:
            category = Category(item.get("category"))
        except ValueError:
            raise MalformedCatalog(location, f"{kind}: bad category {item.get('category')!r}") from None
        common = tuple(
            _parse_property(location, kind, q, vocabularies)
            for q in item.get("common_properties", [])
        )
        specific = tuple(
            _parse_property(location, kind, q, vocabularies)
            for q in item.get("specific_properties", [])
        )
        names = [q.name for q in common + specific]
        if len(names) != len(set(names)):
            raise MalformedCatalog(location, f"{kind}: duplicate property names")
        definitions[kind] = ObjectDefinition(
            kind=kind,
            category=category,
            group=str(item.get("group", "ungrouped")) or "ungrouped",
            description=str(item.get("description", "")),
            doc_link=str(item.get("doc_link", "")),
            common_properties=common,
            specific_properties=specific,
            thumbnail_ref=str(item.get("thumbnail", kind)),
        )
    if not definitions:
        raise MalformedCatalog(location, "no object definitions")
    return definitions


def _check_counts(location: str, raw_defs, catalog: SpecCatalog) -> None:
    # The definitions file declares its own expected category counts
    # (18/2/36 for the bundled files); a mismatch is a load failure.
    declared = raw_defs.get("counts")
    if declared is None:
        return
    if not isinstance(declared, dict):
        raise MalformedCatalog(location, "'counts' must be an object")
    for category in Category:
        expected = declared.get(category.value)
        actual = catalog.count(category)
        if expected is not None and expected != actual:
            raise MalformedCatalog(
                location,
                f"declared {expected} {category.value} definitions, found {actual}",
            )
