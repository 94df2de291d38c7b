import numpy as np
import pytest

from forstergate.atom import AtomModel, RydbergLevel
from forstergate.basis import CollectiveState, build_basis

MANIFOLDS = [
    (80, 0, 1), (81, 0, 1), (82, 0, 1),
    (80, 1, 1), (80, 1, 3), (81, 1, 1), (81, 1, 3),
]

INITIAL_THREE = CollectiveState(
    atoms=(RydbergLevel(80, 1, 3, 3), RydbergLevel(81, 1, 3, 3), RydbergLevel(81, 1, 3, -3))
)
INITIAL_PAIR_13 = CollectiveState(
    atoms=(RydbergLevel(80, 1, 3, 3), RydbergLevel(81, 1, 3, -3))
)


@pytest.fixture(scope="session")
def model():
    return AtomModel.load()


@pytest.fixture(scope="session")
def basis3(model):
    return build_basis(INITIAL_THREE, MANIFOLDS, 1000.0, model)


@pytest.fixture(scope="session")
def basis2(model):
    return build_basis(INITIAL_PAIR_13, MANIFOLDS, 1000.0, model)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
