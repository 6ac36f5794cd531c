import pytest

from eleech.diagram import Diagram
from eleech.isomorphism import load_e1, e2_matrix, ChangeOfBasis
from eleech.lattices import first_shell_by_shapes
from eleech.reduction import build_generators


@pytest.fixture(scope="session")
def diagram():
    return Diagram()


@pytest.fixture(scope="session")
def chg(diagram):
    return ChangeOfBasis(load_e1(), e2_matrix(diagram))


@pytest.fixture(scope="session")
def shell():
    return first_shell_by_shapes()


@pytest.fixture(scope="session")
def generators(chg):
    return build_generators(chg)
