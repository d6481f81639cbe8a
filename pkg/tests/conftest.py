import numpy as np
import pytest

from ghyper import enumerate_monomials
from ghyper.verify import default_config, sample_coefficients


@pytest.fixture(scope="session")
def basis22():
    return enumerate_monomials(2, 2)


@pytest.fixture(scope="session")
def basis24():
    return enumerate_monomials(2, 4)


@pytest.fixture(scope="session")
def basis32():
    return enumerate_monomials(3, 2)


@pytest.fixture(scope="session")
def basis14():
    return enumerate_monomials(1, 4)


def random_decay_valid(basis, seed=0):
    rng = np.random.default_rng(seed)
    return sample_coefficients(basis, rng, default_config(basis.n))
