"""Multi-user STIX 2.1 threat-model workbench.

Catalog-driven object editing and validation, profile-scoped persistence
with retract/restore, chain-of-events timelines, and a pre-sharing
validation report, exposed over HTTP and a CLI.
"""

from .catalog import Category, SpecCatalog, load_bundled_catalog, load_catalog, load_catalog_dir
from .objects import (
    Bundle,
    Problem,
    StixIdentifier,
    StixObject,
    ValidationFinding,
    new_object,
    parse_bundle,
    serialize_bundle,
    set_property,
    validate_object,
)
from .store import Model, ObjectRecord, Page, Profile, Role, Session, UserAccount, WorkspaceStore

__version__ = "0.1.0"

__all__ = [
    "Bundle",
    "Category",
    "Model",
    "ObjectRecord",
    "Page",
    "Problem",
    "Profile",
    "Role",
    "Session",
    "SpecCatalog",
    "StixIdentifier",
    "StixObject",
    "UserAccount",
    "ValidationFinding",
    "WorkspaceStore",
    "load_bundled_catalog",
    "load_catalog",
    "load_catalog_dir",
    "new_object",
    "parse_bundle",
    "serialize_bundle",
    "set_property",
    "validate_object",
    "__version__",
]
