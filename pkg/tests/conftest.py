import numpy as np
import pytest

from linnik.config import Budgets
from linnik.lattice import enumerate_hd
from linnik.modq_graph import build_graph


@pytest.fixture(scope="session")
def budgets():
    return Budgets()


@pytest.fixture(scope="session")
def h101():
    return enumerate_hd(101)


@pytest.fixture(scope="session")
def g101_7():
    return build_graph(101, 7)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260809)
