import pytest
from hypothesis import settings

from dlgeom.config import ConfigManager
from dlgeom.dlgraph import GraphParams

settings.register_profile('dlgeom', max_examples=40, deadline=None)
settings.load_profile('dlgeom')


@pytest.fixture
def dl22():
    return GraphParams(2, 2)


@pytest.fixture
def dl32():
    return GraphParams(3, 2)


@pytest.fixture
def config_manager(tmp_path, monkeypatch):
    monkeypatch.delenv('DL_SEED', raising=False)
    return ConfigManager(tmp_path / 'dl')
