import pytest

from bnsim.models import Network
from bnsim.utils.config import Config
from bnsim.utils.data_processor import load_evidence, load_network

from .helpers import DATA_DIR, make_chain


@pytest.fixture(scope="session")
def cancer_net() -> Network:
    return load_network(DATA_DIR / "cancer.json")


@pytest.fixture(scope="session")
def cancer_evidence(cancer_net):
    return load_evidence(DATA_DIR / "cancer_evidence.json", cancer_net)


@pytest.fixture
def deterministic_chain():
    """除根节点外全部为 0/1 条件概率表的 5 节点链，证据在叶节点"""
    return make_chain(5, (0.5, 0.5), name="deterministic"), {"X4": 0}


@pytest.fixture
def config() -> Config:
    return Config.from_dict({})
