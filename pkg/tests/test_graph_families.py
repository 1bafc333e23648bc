import pytest

from graph_families import (
    FAMILY_REGISTRY,
    get_available_families,
    get_family,
    get_family_display_names,
)
from utils.errors import InvalidParameterError
from utils.graph_core import regularity


def test_registry_lookup():
    assert get_family("Hypercube") is FAMILY_REGISTRY["hypercube"]
    assert get_family("grid") is None
    assert "cocktail_party" in get_available_families()
    assert get_family_display_names()["petersen"] == "Petersen graph"


@pytest.mark.parametrize("name, params, n, r", [
    ("complete", {"n": 5}, 5, 4),
    ("circulant", {"n": 6, "S": [1, 3, 5]}, 6, 3),
    ("cocktail_party", {"m": 6}, 12, 10),
    ("hypercube", {"d": 3}, 8, 3),
    ("petersen", {}, 10, 3),
    ("cycle", {"n": 7}, 7, 2),
    ("complete_bipartite", {"a": 3, "b": 3}, 6, 3),
])
def test_builds(name, params, n, r):
    graph = get_family(name).build(params)
    assert graph.n == n
    assert regularity(graph) == r


def test_single_connection_is_promoted_to_list():
    graph = get_family("circulant").build({"n": 2, "S": 1})
    assert graph.num_edges == 1


@pytest.mark.parametrize("name, params, message", [
    ("complete", {}, "required"),
    ("complete", {"n": 4, "k": 2}, "does not take"),
    ("complete", {"n": 1}, "at least 2"),
    ("complete", {"n": 4.5}, "must be an integer"),
    ("hypercube", {"d": True}, "must be an integer"),
    ("circulant", {"n": 6, "S": [1]}, "closed under negation"),
])
def test_invalid_params(name, params, message):
    with pytest.raises(InvalidParameterError, match=message):
        get_family(name).build(params)


def test_describe():
    described = get_family("circulant").describe()
    assert described["name"] == "circulant"
    assert [p["name"] for p in described["parameters"]] == ["n", "S"]
    assert described["parameters"][1]["type"] == "int_list"
