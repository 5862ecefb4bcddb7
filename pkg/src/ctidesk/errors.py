"""Error types shared across the workbench.

Every error carries a stable machine-readable ``code`` so the HTTP gateway
and the CLI can map failures without string matching. Extra keyword details
are kept on the exception for structured reporting.
"""

from __future__ import annotations


class WorkbenchError(Exception):
    """Base class for all workbench failures."""

    code = "error"

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.__class__.__name__)
        self.message = message or self.__class__.__name__
        self.details = details


# --------------------------------------------------------------- catalog

class FileUnreadable(WorkbenchError):
    code = "file-unreadable"


class MalformedCatalog(WorkbenchError):
    code = "malformed-catalog"

    def __init__(self, location: str, reason: str):
        super().__init__(f"{location}: {reason}", location=location, reason=reason)


class DanglingVocabularyReference(MalformedCatalog):
    code = "dangling-vocabulary-reference"

    def __init__(self, property_name: str, vocabulary: str):
        WorkbenchError.__init__(
            self,
            f"property {property_name!r} references unknown vocabulary {vocabulary!r}",
            property=property_name,
            vocabulary=vocabulary,
        )


class UnknownKind(WorkbenchError):
    code = "unknown-kind"

    def __init__(self, kind: str):
        super().__init__(f"unknown object kind {kind!r}", kind=kind)


class UnknownVocabulary(WorkbenchError):
    code = "unknown-vocabulary"

    def __init__(self, name: str):
        super().__init__(f"unknown vocabulary {name!r}", name=name)


# ----------------------------------------------------------- object model

class UnknownProperty(WorkbenchError):
    code = "unknown-property"

    def __init__(self, kind: str, name: str):
        super().__init__(f"{kind} has no property {name!r}", kind=kind, name=name)


class ShapeMismatch(WorkbenchError):
    code = "shape-mismatch"

    def __init__(self, name: str, expected: str, got: str):
        super().__init__(
            f"property {name!r} expects {expected}, got {got}",
            name=name, expected=expected, got=got,
        )


class DuplicateIdentifier(WorkbenchError):
    code = "duplicate-identifier"

    def __init__(self, identifier: str):
        super().__init__(f"duplicate object identifier {identifier}", identifier=identifier)


class MalformedJson(WorkbenchError):
    code = "malformed-json"


class NotABundle(WorkbenchError):
    code = "not-a-bundle"


# ----------------------------------------------------------------- store

class UsernameTaken(WorkbenchError):
    code = "username-taken"


class WeakPassword(WorkbenchError):
    code = "weak-password"


class UnknownProfile(WorkbenchError):
    code = "unknown-profile"


class BadCredentials(WorkbenchError):
    code = "bad-credentials"

    def __init__(self):
        # One message for unknown user and wrong password alike.
        super().__init__("invalid username or password")


class SessionExpired(WorkbenchError):
    code = "session-expired"

    def __init__(self):
        super().__init__("session missing or expired")


class NotFound(WorkbenchError):
    code = "not-found"

    def __init__(self):
        # One message for nonexistent and foreign identifiers alike, so
        # probing identifiers reveals nothing about what exists.
        super().__init__("no such resource")


class Forbidden(WorkbenchError):
    code = "forbidden"


class Retracted(WorkbenchError):
    code = "retracted"

    def __init__(self, record_id: str):
        super().__init__(f"record {record_id} is retracted", record_id=record_id)


class EmptyName(WorkbenchError):
    code = "empty-name"


class PageOutOfRange(WorkbenchError):
    code = "page-out-of-range"

    def __init__(self, page_index: int, page_count: int):
        super().__init__(
            f"page {page_index} out of range (1..{page_count})",
            page_index=page_index, page_count=page_count,
        )
