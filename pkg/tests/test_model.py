import json

import pytest
from hypothesis import given, settings, strategies as st

from figraph.model import (
    ClassificationGraph, DuplicateLabel, DuplicateOrbitId, Edge, EdgeLabel, IncompatibleLabel,
    Loop, LoopOnSingleton, Orbit, OrbitKind, OrderedPairUnsupported, ParseError, RandomGenParams,
    UnknownOrbitRef, family, has_johnson_orbit, has_quadratic_independent_orbit, is_valid, parse,
    random_classification_graph, serialize, validate,
)


def raw(orbits, loops=(), edges=()):
    return ClassificationGraph(tuple(Orbit(i, OrbitKind(k)) for i, k in orbits),
                               tuple(Loop(o, EdgeLabel(l)) for o, l in loops),
                               tuple(Edge(a, b, EdgeLabel(l)) for a, b, l in edges))


class TestValidate:
    def test_kneser_orbit_ok(self):
        validate(raw([("P", "pair")], [("P", "PairDisjoint")]))

    def test_empty_ok(self):
        validate(ClassificationGraph())

    def test_loop_on_singleton(self):
        with pytest.raises(LoopOnSingleton) as exc:
            validate(raw([("S", "singleton")], [("S", "LinComplete")]))
        assert exc.value.rule == 4
        assert exc.value.where == "S"

    @pytest.mark.parametrize("c, err", [
        (raw([("A", "pair"), ("A", "linear")]), DuplicateOrbitId),
        (raw([("A", "pair")], [("B", "PairDisjoint")]), UnknownOrbitRef),
        (raw([("A", "pair")], [], [("A", "Z", "PPShare0")]), UnknownOrbitRef),
        (raw([("A", "pair")], [("A", "LinComplete")]), IncompatibleLabel),
        (raw([("A", "linear")], [("A", "PairShare1")]), IncompatibleLabel),
        (raw([("A", "pair"), ("B", "linear")], [], [("A", "B", "PPShare0")]), IncompatibleLabel),
        (raw([("A", "linear"), ("B", "singleton")], [], [("A", "B", "LLShare1")]), IncompatibleLabel),
        (raw([("A", "pair")], [], [("A", "A", "PPShare0")]), IncompatibleLabel),
        (raw([("A", "pair")], [("A", "PairShare1"), ("A", "PairShare1")]), DuplicateLabel),
        (raw([("A", "linear")], [("A", "LinComplete"), ("A", "LinComplete")]), DuplicateLabel),
        (raw([("A", "pair"), ("B", "pair")], [], [("A", "B", "PPShare1"), ("B", "A", "PPShare1")]),
         DuplicateLabel),
    ])
    def test_rule_violations(self, c, err):
        with pytest.raises(err):
            validate(c)
        assert not is_valid(c)

    def test_both_linear_linear_labels_allowed(self):
        validate(raw([("A", "linear"), ("B", "linear")], [], [("A", "B", "LLShare0"), ("A", "B", "LLShare1")]))

    def test_singleton_singleton_edge(self):
        validate(raw([("S", "singleton"), ("T", "singleton")], [], [("S", "T", "AllToSingleton")]))

    def test_edge_order_is_normalized(self):
        a = raw([("A", "pair"), ("B", "pair")], [], [("B", "A", "PPShare2"), ("A", "B", "PPShare0")])
        b = raw([("A", "pair"), ("B", "pair")], [], [("A", "B", "PPShare0"), ("A", "B", "PPShare2")])
        assert a == b


class TestParse:
    KNESER = b'{"orbits": [{"id": "P", "kind": "pair"}], "loops": [{"orbit": "P", "label": "PairDisjoint"}], "edges": []}'

    def test_kneser_document(self):
        c = parse(self.KNESER)
        assert c == family("kneser2")
        assert len(c.orbits) == 1 and len(c.loops) == 1

    def test_ordered_pair_rejected(self):
        doc = b'{"orbits": [{"id": "Q", "kind": "ordered_pair"}]}'
        with pytest.raises(OrderedPairUnsupported):
            parse(doc)

    def test_round_trip_complete_bipartite(self):
        c = family("complete_bipartite")
        text = serialize(c)
        assert parse(text) == c
        assert serialize(parse(text)) == text

    @pytest.mark.parametrize("doc", [
        b"not json",
        b"[]",
        b'{"orbits": [{"id": 3, "kind": "pair"}]}',
        b'{"orbits": [{"id": "A", "kind": "cube"}]}',
        b'{"orbits": [{"id": "A", "kind": "pair"}], "loops": [{"orbit": "A", "label": "Nope"}]}',
        b'{"orbits": [], "extra": 1}',
        b'{"loops": []}',
    ])
    def test_malformed(self, doc):
        with pytest.raises(ParseError):
            parse(doc)

    def test_validation_runs_after_parse(self):
        doc = {"orbits": [{"id": "S", "kind": "singleton"}], "loops": [{"orbit": "S", "label": "LinComplete"}]}
        with pytest.raises(LoopOnSingleton):
            parse(json.dumps(doc))


class TestFamilies:
    def test_kneser2(self):
        c = family("Kneser2")
        assert [o.kind for o in c.orbits] == [OrbitKind.PAIR]
        assert c.loop_labels("P") == {EdgeLabel.PairDisjoint}

    def test_complete_bipartite(self):
        c = family("CompleteBipartite")
        assert [o.kind for o in c.orbits] == [OrbitKind.LINEAR, OrbitKind.LINEAR]
        assert {e.label for e in c.edges} == {EdgeLabel.LLShare0, EdgeLabel.LLShare1}
        assert not c.loops

    def test_copies_of_kneser2(self):
        c = family("CopiesOfKneser2", 2)
        assert c.count(OrbitKind.PAIR) == 2
        assert all(c.loop_labels(o.id) == {EdgeLabel.PairDisjoint} for o in c.orbits)
        assert {e.label for e in c.edges} == {EdgeLabel.PPShare1, EdgeLabel.PPShare2}

    def test_disjoint_union(self):
        c = family("disjoint_union", 3, "johnson2")
        assert c.count(OrbitKind.PAIR) == 3 and not c.edges

    def test_unknown_and_bad_k(self):
        with pytest.raises(ValueError):
            family("petersen")
        with pytest.raises(ValueError):
            family("copies_of_complete", 0)

    @pytest.mark.parametrize("name, expected", [
        ("kneser2", (False, False)),
        ("johnson2", (False, True)),
    ])
    def test_predicates(self, name, expected):
        c = family(name)
        assert (has_quadratic_independent_orbit(c), has_johnson_orbit(c)) == expected

    def test_predicates_loop_free(self):
        c = ClassificationGraph.build([("P", "pair")])
        assert (has_quadratic_independent_orbit(c), has_johnson_orbit(c)) == (True, False)


class TestRandom:
    def test_no_pair_orbits_is_vertex_linear(self):
        c = random_classification_graph(RandomGenParams(pair=0, linear=(1, 3), singleton=(0, 2), seed=5))
        assert c.is_vertex_linear

    def test_deterministic(self):
        p = RandomGenParams(seed=12345)
        assert serialize(random_classification_graph(p)) == serialize(random_classification_graph(p))

    def test_full_inclusion_counts(self):
        # Pair loops: 2 labels x 2 orbits; pair-pair: 3 labels; pair-singleton: 1 label x 2.
        c = random_classification_graph(RandomGenParams(pair=2, linear=0, singleton=1, p=1.0, seed=0))
        assert len(c.loops) == 4
        assert sum(e.label.name.startswith("PP") for e in c.edges) == 3
        assert sum(e.label == EdgeLabel.AllToSingleton for e in c.edges) == 2
        assert len(c.edges) == 5

    def test_seeds_differ(self):
        # Needs a configuration space far larger than 100^2 for the smoke check to be meaningful.
        params = dict(pair=(1, 3), linear=(1, 3), singleton=(0, 3))
        outs = {serialize(random_classification_graph(RandomGenParams(seed=s, **params)))
                for s in range(100)}
        assert len(outs) >= 99

    @pytest.mark.parametrize("kwargs", [dict(p=1.5), dict(pair=-1), dict(linear=(3, 1))])
    def test_bad_params(self, kwargs):
        with pytest.raises(ValueError):
            RandomGenParams(**kwargs)

    @settings(max_examples=60, deadline=None)
    @given(seed=st.integers(0, 2**64 - 1), p=st.floats(0, 1),
           pair=st.integers(0, 3), linear=st.integers(0, 3), singleton=st.integers(0, 3))
    def test_valid_by_construction_and_round_trip(self, seed, p, pair, linear, singleton):
        c = random_classification_graph(RandomGenParams(pair, linear, singleton, p, seed))
        validate(c)
        assert parse(serialize(c)) == c
        assert c.canonical().digest() == c.digest()
