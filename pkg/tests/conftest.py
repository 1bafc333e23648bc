import pytest

from utils.graph_core import circulant, cocktail_party, complete_graph, cycle, hypercube, petersen, total_graph
from utils.spectral import exact_integer_spectrum, total_exact_spectrum


@pytest.fixture(scope="session")
def k4():
    return complete_graph(4)


@pytest.fixture(scope="session")
def k5():
    return complete_graph(5)


@pytest.fixture(scope="session")
def petersen_graph():
    return petersen()


@pytest.fixture(scope="session")
def q3():
    return hypercube(3)


@pytest.fixture(scope="session")
def k33():
    return circulant(6, [1, 3, 5])


@pytest.fixture(scope="session")
def c5():
    return cycle(5)


@pytest.fixture(scope="session")
def cp6():
    return cocktail_party(6)


@pytest.fixture(scope="session")
def cp6_spectrum(cp6):
    return exact_integer_spectrum(cp6)


@pytest.fixture(scope="session")
def q3_spectrum(q3):
    return exact_integer_spectrum(q3)


@pytest.fixture(scope="session")
def total_petersen(petersen_graph):
    graph, labels = total_graph(petersen_graph)
    spectrum = total_exact_spectrum(petersen_graph, exact_integer_spectrum(petersen_graph))
    return graph, labels, spectrum


@pytest.fixture(scope="session")
def total_q3(q3, q3_spectrum):
    graph, labels = total_graph(q3)
    return graph, labels, total_exact_spectrum(q3, q3_spectrum)
