"""Offline command line: serve, validate bundles, export, seed, bootstrap.

Exit codes for `validate`: 0 means nothing required is missing, 1 means
findings were reported, 2 means the input could not be read at all.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import share, timeline
from .catalog import load_bundled_catalog, load_catalog_dir
from .config import load_config
from .errors import WorkbenchError
from .objects import Problem, parse_bundle, validate_object
from .seed import seed_desk_fixture
from .store import Profile, Role, WorkspaceStore
from .timestamps import format_timestamp


def _load_catalog(catalog_dir: str | None):
    return load_catalog_dir(catalog_dir) if catalog_dir else load_bundled_catalog()


def _open_store(db: str, catalog_dir: str | None) -> WorkspaceStore:
    return WorkspaceStore(db, _load_catalog(catalog_dir))


@click.group()
def main():
    """Threat-model workbench utilities."""


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None,
              help="JSON config file; environment variables override it.")
def serve(config_path):
    """Run the HTTP service."""
    from .gateway import serve as run

    try:
        run(load_config(config_path))
    except WorkbenchError as exc:
        raise click.ClickException(str(exc)) from exc


@main.command()
@click.argument("bundle_path", type=click.Path())
@click.option("--catalog-dir", default=None, help="Directory with the two catalog files.")
def validate(bundle_path, catalog_dir):
    """Check a bundle file for missing required parameters."""
    try:
        catalog = _load_catalog(catalog_dir)
        text = Path(bundle_path).read_text(encoding="utf-8")
    except (OSError, WorkbenchError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    try:
        bundle = parse_bundle(catalog, text)
    except WorkbenchError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)

    findings = []
    for object in bundle.objects:
        findings.extend(validate_object(object, catalog))
    for finding in findings:
        click.echo(finding.render())
    missing = any(f.problem is Problem.MISSING_REQUIRED for f in findings)
    sys.exit(1 if missing else 0)


@main.command()
@click.argument("model_id")
@click.option("--db", required=True, type=click.Path(exists=True))
@click.option("--out", required=True, type=click.Path())
@click.option("--catalog-dir", default=None)
def export(model_id, db, out, catalog_dir):
    """Write one model's bundle JSON to a file."""
    store = _open_store(db, catalog_dir)
    try:
        text = share.bundle_for_model(store, model_id)
    except WorkbenchError as exc:
        raise click.ClickException(str(exc)) from exc
    Path(out).write_text(text, encoding="utf-8")
    click.echo(f"wrote {out}")


@main.command("timeline")
@click.option("--db", required=True, type=click.Path(exists=True))
@click.option("--profile", "profile_name", required=True,
              type=click.Choice([p.value for p in Profile]))
@click.option("--out", required=True, type=click.Path())
@click.option("--catalog-dir", default=None)
def timeline_export(db, profile_name, out, catalog_dir):
    """Write a profile's chain-of-events view to a JSON file."""
    store = _open_store(db, catalog_dir)
    entries = timeline.profile_timeline(store, Profile(profile_name))
    doc = [
        {
            "record_id": e.record_id,
            "model_id": e.model_id,
            "model_name": e.model_name,
            "object_kind": e.object_kind,
            "object_summary": e.object_summary,
            "modified_at": format_timestamp(e.modified_at) if e.modified_at else None,
            "colour_index": e.colour_index,
        }
        for e in entries
    ]
    Path(out).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    click.echo(f"wrote {out} ({len(doc)} entries)")


@main.command("bootstrap-admin")
@click.option("--db", required=True, type=click.Path())
@click.option("--username", required=True)
@click.option("--password", required=True)
@click.option("--profile", "profile_name", default=Profile.MANAGEMENT.value,
              type=click.Choice([p.value for p in Profile]))
@click.option("--catalog-dir", default=None)
def bootstrap_admin(db, username, password, profile_name, catalog_dir):
    """Create the first administrator account; refuses if one exists."""
    store = _open_store(db, catalog_dir)
    if store.admin_exists():
        raise click.ClickException("an administrator already exists")
    try:
        account = store.register(username, password, profile_name, Role.ADMINISTRATOR)
    except WorkbenchError as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(f"created administrator {account.username!r}")


@main.command()
@click.option("--db", required=True, type=click.Path())
@click.option("--catalog-dir", default=None)
def seed(db, catalog_dir):
    """Populate a database with the desk-scale demo fixture."""
    catalog = _load_catalog(catalog_dir)
    store = WorkspaceStore(db, catalog)
    summary = seed_desk_fixture(store, catalog)
    click.echo(
        f"seeded {summary['user_count']} users, {summary['model_count']} models, "
        f"{summary['object_count']} objects"
    )


if __name__ == "__main__":
    main()
