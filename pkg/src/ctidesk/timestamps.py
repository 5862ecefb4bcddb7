"""Timestamp handling.

Every timestamp in the system is UTC. The wire format is RFC 3339 with
exactly three fractional digits and a trailing "Z"; all values are truncated
to millisecond precision on entry so serialisation round-trips exactly and
the rendered text sorts chronologically.
"""

from __future__ import annotations

from datetime import datetime, timezone


def utc_now() -> datetime:
    return truncate_millis(datetime.now(timezone.utc))


def truncate_millis(value: datetime) -> datetime:
    """Normalise to UTC and drop sub-millisecond digits."""
    if value.tzinfo is None:
        value = value.replace(tzinfo=timezone.utc)
    value = value.astimezone(timezone.utc)
    return value.replace(microsecond=(value.microsecond // 1000) * 1000)


def format_timestamp(value: datetime) -> str:
    value = truncate_millis(value)
    return value.strftime("%Y-%m-%dT%H:%M:%S.") + f"{value.microsecond // 1000:03d}Z"


def parse_timestamp(text: str) -> datetime:
    """Parse an RFC 3339 timestamp; raises ValueError on anything else."""
    if not isinstance(text, str) or not text:
        raise ValueError(f"not a timestamp: {text!r}")
    candidate = text[:-1] + "+00:00" if text.endswith("Z") else text
    return truncate_millis(datetime.fromisoformat(candidate))
