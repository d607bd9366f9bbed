# tests/conftest.py
import pytest

from app.core.config import get_settings
from tests.helpers import complete, cycle


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch, tmp_path):
    # relative output paths and .env lookups resolve inside the test's tmp dir
    monkeypatch.chdir(tmp_path)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def triangle():
    return cycle(3)


@pytest.fixture
def k4():
    return complete(4)
