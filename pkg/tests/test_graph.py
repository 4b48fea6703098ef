import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hingen.graph import GraphError, InvariantError, NodeRemap, TypedGraph, edge_key
from hingen.schema import EdgeType, Schema, SchemaError, make_schema

from conftest import random_graph, toy_schema


def test_schema_rejects_bad_declarations():
    with pytest.raises(SchemaError):
        Schema(("a", "a"), (), "a", ("y",))
    with pytest.raises(SchemaError):
        Schema(("a", "b"), (), "c", ("y",))
    with pytest.raises(SchemaError):
        Schema(("a",), (), "a", ())
    with pytest.raises(SchemaError):
        Schema(("a",), (), "a", ("y", "y"))
    with pytest.raises(SchemaError):
        Schema(("a", "b"), (EdgeType("e", "a", "z"),), "a", ("y",))
    with pytest.raises(SchemaError):
        Schema(("a", "b"), (EdgeType("e", "a", "b"), EdgeType("e", "b", "a")), "a", ("y",))


def test_schema_round_trip_and_unknown_keys(tmp_path, dblp_schema):
    d = dblp_schema.to_dict()
    assert Schema.from_dict(d) == dblp_schema
    path = tmp_path / "s.json"
    path.write_text(json.dumps(d))
    assert Schema.load(path) == dblp_schema
    with pytest.raises(SchemaError):
        Schema.from_dict({**d, "extra": 1})


def test_schema_neighbour_types(dblp_schema):
    assert dblp_schema.minor_types == ("paper", "term", "conference")
    assert dblp_schema.neighbor_types("paper") == ["author", "term", "conference"]
    assert dblp_schema.neighbor_types("author") == ["paper"]
    assert dblp_schema.edge_type_for("paper", "author").name == "author-paper"
    with pytest.raises(SchemaError):
        dblp_schema.edge_type_for("author", "term")


def test_add_edge_legality():
    g = TypedGraph(toy_schema())
    m, d, a = g.add_node("movie"), g.add_node("director"), g.add_node("actor")
    e = g.add_edge("movie-director", m, d)
    assert g.add_edge("movie-director", d, m) == e  # undirected and idempotent
    assert g.num_edges == 1
    with pytest.raises(SchemaError):
        g.add_edge("movie-director", m, a)
    with pytest.raises(GraphError):
        g.add_edge("movie-director", m, m)
    with pytest.raises(SchemaError):
        g.add_edge("no-such", m, d)
    with pytest.raises(GraphError):
        g.add_edge("movie-actor", m, 99)


def test_degree_by_type_examples():
    g = TypedGraph(toy_schema())
    m = g.add_node("movie")
    lonely = g.add_node("movie")
    g.add_edge("movie-director", m, g.add_node("director"))
    for _ in range(2):
        g.add_edge("movie-actor", m, g.add_node("actor"))
    assert g.degree_by_type(m, "actor") == 2
    assert g.degree_by_type(m, "director") == 1
    assert g.degree_by_type(lonely, "actor") == 0
    assert g.degree(m) == 3


def test_labels_only_on_targets():
    g = TypedGraph(toy_schema())
    m, d = g.add_node("movie"), g.add_node("director")
    g.set_labels(m, ["y1"])
    with pytest.raises(SchemaError):
        g.set_labels(d, ["y1"])
    with pytest.raises(SchemaError):
        g.set_labels(m, ["nope"])


def test_check_detects_corruption():
    g = TypedGraph(toy_schema())
    m, d = g.add_node("movie"), g.add_node("director")
    g.add_edge("movie-director", m, d)
    g.check()
    g._nbrs[d]["movie"].pop(m)
    with pytest.raises(InvariantError):
        g.check()


def test_remap_path_compression():
    r = NodeRemap()
    r.record(5, 3)
    r.record(3, 1)
    assert r.resolve(5) == 1
    assert r.resolve(7) == 7
    assert 5 in r and 7 not in r


def test_compacted_keeps_structure(imdb_schema):
    g = random_graph(imdb_schema, np.random.default_rng(0), 30, 60)
    a, b = g.nodes("actor")[:2]
    g.contract(a, b)
    h, dense = g.compacted()
    assert sorted(dense.values()) == list(range(g.num_nodes))
    assert {edge_key(et, dense[a], dense[b]) for et, a, b in g.edge_keys()} == set(h.edge_keys())


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 40), m=st.integers(0, 120))
def test_degree_recount_oracle(seed, n, m):
    schema = make_schema("movie", [("movie", "director"), ("movie", "actor"), ("actor", "director")], ["y"])
    g = random_graph(schema, np.random.default_rng(seed), n, m)
    g.check()
    for v in g.nodes():
        for t in schema.node_types:
            expect = len({u for _, a, b in g.edge_keys() for u in (a, b)
                          if v in (a, b) and u != v and g.node_type(u) == t})
            assert g.degree_by_type(v, t) == expect
    for _, a, b in g.edge_keys():
        assert g.has_edge(a, b) and g.has_edge(b, a)
