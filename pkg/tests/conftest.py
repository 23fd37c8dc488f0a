"""
Shared fixtures: the shipped example graphs, their algebras and seeded random elements
"""
import random

import pytest

from config.settings import GRAPHS_PATH
from controllers.file_parser import FileParser
from models.algebra import LeavittPathAlgebra, Monomial
from models.graph import paths_into

PRIMITIVE_GRAPHS = ["rose2", "rose3", "fibonacci", "j2", "triangle"]
ESSENTIAL_GRAPHS = PRIMITIVE_GRAPHS + ["cycle2"]


def load(name: str):
    return FileParser.load_graph(GRAPHS_PATH / f"{name}.graph")


@pytest.fixture
def graph():
    """Loader for a shipped graph by file stem"""
    return load


@pytest.fixture
def rose2():
    return load("rose2")


@pytest.fixture
def j2():
    return load("j2")


@pytest.fixture
def fibonacci():
    return load("fibonacci")


@pytest.fixture
def r2(rose2):
    return LeavittPathAlgebra(rose2)


@pytest.fixture
def rng():
    return random.Random(20240611)


def random_monomial(algebra: LeavittPathAlgebra, rng: random.Random, max_length: int = 2,
                    balanced: bool = False) -> Monomial:
    g = algebra.graph
    while True:
        w = rng.choice(g.vertices)
        n = rng.randint(0, max_length)
        m = n if balanced else rng.randint(0, max_length)
        alphas, betas = paths_into(g, w, n), paths_into(g, w, m)
        if alphas and betas:
            return Monomial(rng.choice(alphas), rng.choice(betas))


def random_element(algebra: LeavittPathAlgebra, rng: random.Random, terms: int = 3, max_length: int = 2,
                   balanced: bool = False):
    x = algebra.zero()
    for _ in range(rng.randint(1, terms)):
        c = rng.choice([-2, -1, 1, 2, 3])
        x = x + algebra.monomial(random_monomial(algebra, rng, max_length, balanced)).scale(c)
    return x


@pytest.fixture
def random_elements():
    """Factory for seeded random elements of an algebra"""
    return random_element
