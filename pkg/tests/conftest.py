import pytest
from fastapi.testclient import TestClient

from shotscout import SearchEngine, demo_store
from shotscout.service import create_app


@pytest.fixture(scope="session")
def store():
    return demo_store()


@pytest.fixture()
def engine(store):
    return SearchEngine(store)


@pytest.fixture()
def client(engine):
    return TestClient(create_app(engine))
