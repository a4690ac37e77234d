import json
from importlib import resources

import pytest

from lorentzroots.lattice import Lattice


def _fixture(name):
    text = resources.files("lorentzroots").joinpath("fixtures", f"{name}.json").read_text()
    return Lattice(**json.loads(text))


@pytest.fixture(scope="session")
def ex134():
    return _fixture("ex134")


@pytest.fixture(scope="session")
def u():
    return _fixture("u")


@pytest.fixture(scope="session")
def u_plus_2():
    return _fixture("u_plus_2")


@pytest.fixture(scope="session")
def u_plus_a2():
    return _fixture("u_plus_a2")


@pytest.fixture(scope="session")
def diag22m():
    return _fixture("diag_2_2_m2")


@pytest.fixture(scope="session")
def triangle():
    """Wall system of the zero-angle fundamental triangle of ex134."""
    return [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
