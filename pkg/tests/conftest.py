import numpy as np
import pytest

from rmlrc import LocallyRepairableCode, derive_params

EX1 = dict(n=14, M=9, r=4, delta=2, alpha=1, q=2)
EX2 = dict(n=15, M=28, r=3, delta=3, alpha=4, q=8)


@pytest.fixture(scope="session")
def ex1():
    return LocallyRepairableCode(derive_params(**EX1))


@pytest.fixture(scope="session")
def ex2():
    return LocallyRepairableCode(derive_params(**EX2))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
