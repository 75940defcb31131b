import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from figraph.expand import expand
from figraph.graph import complete_graph, empty_graph, gnp_graph
from figraph.ideals import (
    check_dim_equals_alpha, edge_ideal, krull_dimension, krull_dimension_with_provenance, variable_name,
)
from figraph.model import family
from figraph.solver import TooLarge


def test_complete_five():
    ideal = edge_ideal(complete_graph(5))
    assert len(ideal.generators) == 10
    assert ideal.krull_dim == 1


def test_kneser_four():
    ideal = edge_ideal(expand(family("kneser2"), 4))
    gens = {frozenset(ideal.variables[i] for i in g) for g in ideal.generators}
    assert gens == {frozenset({"x_{1,2}", "x_{3,4}"}), frozenset({"x_{1,3}", "x_{2,4}"}),
                    frozenset({"x_{1,4}", "x_{2,3}"})}
    assert ideal.krull_dim == 3
    assert "x_{1,2}x_{3,4}" in ideal.text()


def test_edgeless():
    ideal = edge_ideal(empty_graph(5))
    assert ideal.generators == () and ideal.krull_dim == 5
    assert krull_dimension(empty_graph(0)) == 0


def test_json_shape():
    doc = json.loads(edge_ideal(complete_graph(3)).to_json())
    assert doc["krull_dim"] == 1 and len(doc["generators"]) == 3


def test_variable_names():
    g = expand(family("kneser2"), 3)
    assert [variable_name(v) for v in g.vertices] == ["x_{1,2}", "x_{1,3}", "x_{2,3}"]
    # Clashing payloads across orbits get qualified by orbit id.
    assert edge_ideal(expand(family("complete_bipartite"), 1)).variables == ("x_{A:1}", "x_{B:1}")


def test_provenance():
    assert krull_dimension_with_provenance(complete_graph(4))[1] == "vertex-cover-search"
    dim, how = krull_dimension_with_provenance(expand(family("kneser2"), 9))
    assert (dim, how) == (8, "mis-solver")


@pytest.mark.parametrize("g", [complete_graph(5), empty_graph(1), expand(family("kneser2"), 4)])
def test_dim_equals_alpha_examples(g):
    ok, report = check_dim_equals_alpha(g)
    assert ok and report.krull_dim == report.alpha


def test_dim_alpha_too_large():
    with pytest.raises(TooLarge):
        check_dim_equals_alpha(empty_graph(30))


@settings(max_examples=100, deadline=None)
@given(m=st.integers(1, 20), p=st.floats(0.1, 0.9), seed=st.integers(0, 2**32))
def test_dim_equals_alpha_random(m, p, seed):
    ok, _ = check_dim_equals_alpha(gnp_graph(m, p, random.Random(seed)))
    assert ok
