import tempfile
from datetime import datetime, timedelta, timezone
from pathlib import Path

import pytest

from ctidesk import WorkspaceStore, load_bundled_catalog
from ctidesk.catalog import bundled_data_dir

T0 = datetime(2024, 3, 1, 12, 0, 0, tzinfo=timezone.utc)


@pytest.fixture(scope="session")
def catalog():
    return load_bundled_catalog()


@pytest.fixture(scope="session")
def definitions_path() -> Path:
    return bundled_data_dir() / "STIX2.1.json"


@pytest.fixture(scope="session")
def vocabularies_path() -> Path:
    return bundled_data_dir() / "STIX2.1-vocabularies.json"


@pytest.fixture
def store(catalog, tmp_path):
    s = WorkspaceStore(tmp_path / "workbench.db", catalog)
    yield s
    s.close()


@pytest.fixture
def store_factory(catalog, tmp_path):
    opened = []

    def make(**kwargs) -> WorkspaceStore:
        path = tmp_path / f"store-{len(opened)}.db"
        s = WorkspaceStore(path, catalog, **kwargs)
        opened.append(s)
        return s

    yield make
    for s in opened:
        s.close()


class Clock:
    """Deterministic strictly-increasing test clock."""

    def __init__(self, start: datetime = T0, step: timedelta = timedelta(seconds=1)):
        self.now = start
        self.step = step

    def tick(self) -> datetime:
        self.now += self.step
        return self.now


@pytest.fixture
def clock():
    return Clock()
