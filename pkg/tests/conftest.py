import pytest

from mubforge import gf


@pytest.fixture(autouse=True)
def _default_field_table(monkeypatch):
    monkeypatch.delenv(gf.FIELD_TABLE_ENV, raising=False)
    gf.set_field_table(None)
    yield
    gf.set_field_table(None)
