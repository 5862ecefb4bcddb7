"""Chain-of-events view over a profile's object records.

Records that have been modified are listed oldest first, so the stream
reads as the attack unfolded; never-edited records follow at the end.
Each model keeps one colour for every entry it contributes, assigned by
first appearance in the sorted stream, so the colouring depends only on
the event order, never on storage order.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime

from .objects import object_summary
from .store import Model, ObjectRecord, Profile, WorkspaceStore

PALETTE_SIZE = 8


@dataclass(frozen=True)
class TimelineEntry:
    record_id: str
    model_id: str
    model_name: str
    object_kind: str
    object_summary: str
    modified_at: datetime | None
    colour_index: int
    retracted: bool = False


def build_timeline(store: WorkspaceStore, token: str, now: datetime) -> list[TimelineEntry]:
    """All active records of the caller's profile, across all its models."""
    user = store.current_user(token, now)
    return profile_timeline(store, user.profile)


def model_history(store: WorkspaceStore, token: str, model_id: str, now: datetime) -> list[TimelineEntry]:
    """Forensic view of one model: same ordering, retracted records kept

    and marked, so past evidence stays reviewable."""
    user = store.current_user(token, now)
    store.model_for_profile(user, model_id)  # access check, NotFound on foreign ids
    return history_for_model(store, model_id)


def profile_timeline(store: WorkspaceStore, profile: Profile) -> list[TimelineEntry]:
    pairs = store.profile_records(profile, include_retracted=False)
    return _assemble(pairs)


def history_for_model(store: WorkspaceStore, model_id: str) -> list[TimelineEntry]:
    model, records = store.model_records(model_id, include_retracted=True)
    return _assemble([(record, model) for record in records])


def _assemble(pairs: list[tuple[ObjectRecord, Model]]) -> list[TimelineEntry]:
    timed = [p for p in pairs if p[0].modified_at is not None]
    untimed = [p for p in pairs if p[0].modified_at is None]
    # Ties keep the store's deterministic record-id order.
    timed.sort(key=lambda p: (p[0].modified_at, _id_rank(p[0].record_id)))
    untimed.sort(key=lambda p: (p[0].created_at, _id_rank(p[0].record_id)))

    colours: dict[str, int] = {}
    entries: list[TimelineEntry] = []
    for record, model in timed + untimed:
        if model.model_id not in colours:
            colours[model.model_id] = len(colours) % PALETTE_SIZE
        entries.append(TimelineEntry(
            record_id=record.record_id,
            model_id=model.model_id,
            model_name=model.name,
            object_kind=record.payload.kind,
            object_summary=object_summary(record.payload),
            modified_at=record.modified_at,
            colour_index=colours[model.model_id],
            retracted=record.retracted,
        ))
    return entries


def _id_rank(record_id: str) -> tuple[int, ...]:
    # Descending id order expressed as an ascending sort key.
    return tuple(-b for b in record_id.encode("utf-8"))
