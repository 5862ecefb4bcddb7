"""Pre-sharing pipeline: validate a model's objects and emit its bundle.

The report checks every active object for missing required parameters
(plus shape and vocabulary problems, which are advisory); a model is
shareable when nothing required is missing. Preview and download both
serialise the same bundle, and neither is gated on the report — analysts
may export incomplete models.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from datetime import datetime

from .catalog import SpecCatalog
from .objects import (
    Problem,
    StixIdentifier,
    ValidationFinding,
    serialize_bundle,
    validate_object,
)
from .store import WorkspaceStore

_HOSTILE_CHARS = re.compile(r"[^A-Za-z0-9._-]")


@dataclass(frozen=True)
class ShareReport:
    model_id: str
    checked_count: int
    findings: list[ValidationFinding]

    @property
    def shareable(self) -> bool:
        return not any(f.problem is Problem.MISSING_REQUIRED for f in self.findings)


def validate_model(
    store: WorkspaceStore, catalog: SpecCatalog, token: str, model_id: str, now: datetime
) -> ShareReport:
    user = store.current_user(token, now)
    store.model_for_profile(user, model_id)
    return report_for_model(store, catalog, model_id)


def preview_model_json(
    store: WorkspaceStore, token: str, model_id: str, now: datetime
) -> str:
    """Bundle JSON of the active records, with a fresh bundle id each call."""
    user = store.current_user(token, now)
    store.model_for_profile(user, model_id)
    return bundle_for_model(store, model_id)


def download_model_json(
    store: WorkspaceStore, token: str, model_id: str, now: datetime
) -> tuple[str, str, bytes]:
    """(filename, media type, bytes) for the model's bundle."""
    user = store.current_user(token, now)
    model = store.model_for_profile(user, model_id)
    text = bundle_for_model(store, model_id)
    return bundle_filename(model.name), "application/json", text.encode("utf-8")


def report_for_model(store: WorkspaceStore, catalog: SpecCatalog, model_id: str) -> ShareReport:
    _, records = store.model_records(model_id, include_retracted=False)
    findings: list[ValidationFinding] = []
    for record in records:  # dashboard listing order
        findings.extend(validate_object(record.payload, catalog))
    return ShareReport(model_id=model_id, checked_count=len(records), findings=findings)


def bundle_for_model(
    store: WorkspaceStore, model_id: str, bundle_id: StixIdentifier | None = None
) -> str:
    _, records = store.model_records(model_id, include_retracted=False)
    if bundle_id is None:
        bundle_id = StixIdentifier.generate("bundle")
    return serialize_bundle([r.payload for r in records], bundle_id)


def bundle_filename(model_name: str) -> str:
    """Model name with path-hostile characters replaced, plus .json."""
    safe = _HOSTILE_CHARS.sub("-", model_name).strip(".") or "model"
    return f"{safe}.json"
