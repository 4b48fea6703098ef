import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hingen.graph import GraphError, TypedGraph
from hingen.groundtruth import GroundTruthMap
from hingen.merge import (
    Cluster,
    apply_pairs,
    check_disjoint,
    inter_cluster_merge,
    intra_cluster_merge,
    merge_batch,
    merge_pair,
    plan_inter_merge,
    plan_intra_merge,
)
from hingen.metrics import component_count
from hingen.motif import build_motif_template, enumerate_metapaths, instantiate_motif
from hingen.schema import SchemaError, make_schema
from hingen.subgraph import BaseSubgraph, attach_minor_nodes, label_subgraph
from hingen.reference import DegreeDistribution

from conftest import random_graph, toy_schema
from oracles import adjacency_sets, binomial_moment_bounds, canonical, oracle_merge, random_disjoint_pairs

RICH = make_schema("movie", [("movie", "director"), ("movie", "actor"), ("actor", "director")], ["y1", "y2"])


def test_shared_neighbour_collapses():
    g = TypedGraph(toy_schema())
    m1, m2, d = g.add_node("movie"), g.add_node("movie"), g.add_node("director")
    a = g.add_node("actor")
    g.add_edge("movie-director", m1, d)
    g.add_edge("movie-director", m2, d)
    g.add_edge("movie-actor", m2, a)
    g.set_labels(m1, ["y1"])
    g.set_labels(m2, ["y2"])
    merge_pair(g, m1, m2)
    assert not g.has_node(m2)
    assert set(g.edge_keys()) == {("movie-director", m1, d), ("movie-actor", m1, a)}
    assert g.labels == {m1: frozenset({"y1", "y2"})}


def test_adjacent_pair_drops_the_joining_edge():
    g = TypedGraph(RICH)
    a1, a2, d = g.add_node("actor"), g.add_node("actor"), g.add_node("director")
    g.add_edge("actor-director", a1, d)
    g.add_edge("actor-director", a2, d)
    merge_pair(g, a1, a2)
    assert set(g.edge_keys()) == {("actor-director", a1, d)}
    h = TypedGraph(RICH)
    m, a = h.add_node("movie"), h.add_node("actor")
    with pytest.raises(SchemaError):
        merge_pair(h, m, a)
    with pytest.raises(GraphError):
        merge_pair(h, m, m)


def test_disjointness_is_enforced():
    with pytest.raises(GraphError):
        check_disjoint([(1, 2), (2, 3)])
    check_disjoint([(1, 2), (3, 4)])


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 50))
def test_merge_matches_set_oracle(seed, n):
    rng = np.random.default_rng(seed)
    g = random_graph(RICH, rng, n, int(rng.integers(0, 3 * n)))
    for v in g.nodes("movie"):
        g.set_labels(v, [RICH.labels[int(rng.integers(2))]])
    state = adjacency_sets(g)
    for keep, drop in random_disjoint_pairs(g, rng, 5):
        merge_pair(g, keep, drop)
        state = oracle_merge(state, keep, drop)
        assert adjacency_sets(g) == state
    g.check()


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 50))
def test_plan_order_and_batch_independence(seed, n):
    rng = np.random.default_rng(seed)
    g = random_graph(RICH, rng, n, int(rng.integers(0, 3 * n)))
    pairs = random_disjoint_pairs(g, rng, n)
    reference = g.copy()
    apply_pairs(reference, pairs)
    for _ in range(3):
        h = g.copy()
        apply_pairs(h, [pairs[i] for i in rng.permutation(len(pairs))])
        assert canonical(h) == canonical(reference)
    batch, remap = merge_batch(g, pairs)
    assert canonical(batch) == canonical(reference)
    assert all(remap.resolve(drop) == keep for keep, drop in pairs)


def _graph_with(counts, schema=RICH):
    g = TypedGraph(schema)
    for t, k in counts.items():
        for _ in range(k):
            g.add_node(t)
    return g


@pytest.mark.parametrize("n,p", [(100, 0.7), (50, 0.3)])
def test_intra_plan_size_is_binomial(n, p):
    rng = np.random.default_rng(7)
    cluster, incoming = _graph_with({"actor": 200}), _graph_with({"actor": n})
    trials = 3000
    sizes = np.array([len(plan_intra_merge(cluster, incoming, {"actor": p}, rng)[1]) for _ in range(trials)])
    dm, dv = binomial_moment_bounds(n, p, trials)
    assert abs(sizes.mean() - n * p) < dm
    assert abs(sizes.var(ddof=1) - n * p * (1 - p)) < dv


def test_intra_plan_is_a_partial_matching():
    rng = np.random.default_rng(0)
    cluster, incoming = _graph_with({"actor": 3, "director": 2}), _graph_with({"actor": 10, "director": 1})
    plans = {pl.node_type: pl for pl in plan_intra_merge(cluster, incoming, {"actor": 1.0, "director": 1.0}, rng)}
    assert len(plans["actor"]) == 3  # clamped by the cluster side
    assert len(plans["director"]) == 1
    for pl in plans.values():
        keeps, drops = zip(*pl.pairs)
        assert len(set(keeps)) == len(keeps) and len(set(drops)) == len(drops)
        assert set(keeps) <= set(cluster.nodes(pl.node_type))
        assert set(drops) <= set(incoming.nodes(pl.node_type))


def _subgraphs(schema, k_actor, n, label="0"):
    rng = np.random.default_rng(0)
    template = build_motif_template(enumerate_metapaths(schema, 2))
    dists = {
        "director": DegreeDistribution.point_mass("movie", "director", 1),
        "actor": DegreeDistribution.point_mass("movie", "actor", k_actor),
    }
    out = []
    for i in range(n):
        g = TypedGraph(schema)
        sg = attach_minor_nodes(g, instantiate_motif(template, rng, g), dists, rng)
        sg.index = i
        out.append(label_subgraph(sg, label))
    return out


def test_intra_p_zero_is_disjoint_union(imdb_schema):
    sgs = _subgraphs(imdb_schema, 3, 4)
    c = intra_cluster_merge("0", sgs, {"director": 0.0, "actor": 0.0}, np.random.default_rng(0))
    assert c.merges == 0
    assert c.graph.num_nodes == sum(sg.graph.num_nodes for sg in sgs)
    assert component_count(c.graph) == 4


def test_intra_p_one_merges_every_actor(imdb_schema):
    # every subgraph has 5 actors; with p=1 each new one fuses with the cluster's 5
    sgs = _subgraphs(imdb_schema, 3, 3)
    c = intra_cluster_merge("0", sgs, {"director": 0.0, "actor": 1.0}, np.random.default_rng(0))
    assert c.graph.count("actor") == 5
    assert c.merges == 10
    assert component_count(c.graph) == 1
    c.graph.check()


def _clusters(schema, sizes, labels=None):
    out = []
    for i, counts in enumerate(sizes):
        y = (labels or schema.labels)[i]
        g = _graph_with(counts, schema)
        for v in g.nodes(schema.target_type):
            g.set_labels(v, [y])
        out.append(Cluster(y, g, GroundTruthMap()))
    return out


def test_inter_plan_mean():
    schema = make_schema("movie", [("movie", "actor")], ["a", "b", "c"])
    clusters = _clusters(schema, [{"actor": 100}] * 3)
    rng = np.random.default_rng(11)
    sizes = [len(plan_inter_merge(clusters, {"actor": 0.3}, False, rng)[0]) for _ in range(400)]
    sd = np.sqrt(300 * 0.3 * 0.7 / 400)
    assert abs(np.mean(sizes) - 90) < 4 * sd


def test_inter_pairs_cross_clusters_and_clamp():
    schema = make_schema("movie", [("movie", "actor")], ["a", "b"])
    clusters = _clusters(schema, [{"actor": 2}, {"actor": 9}])
    plan = plan_inter_merge(clusters, {"actor": 1.0}, False, np.random.default_rng(0))[0]
    assert len(plan) == 2
    for (ca, va), (cb, vb) in plan.pairs:
        assert ca != cb


def test_target_type_only_merged_in_multi_label_mode():
    schema = make_schema("movie", [("movie", "actor")], ["y1", "y2"])
    clusters = _clusters(schema, [{"movie": 1, "actor": 1}, {"movie": 1, "actor": 1}])
    plans = plan_inter_merge(clusters, {"movie": 1.0, "actor": 0.0}, False, np.random.default_rng(0))
    assert [pl.node_type for pl in plans] == ["actor"]
    g, _, _, plans = inter_cluster_merge(clusters, {"movie": 1.0, "actor": 0.0}, True, np.random.default_rng(0))
    assert g.count("movie") == 1
    (m,) = g.nodes("movie")
    assert g.labels[m] == frozenset({"y1", "y2"})


def test_inter_q_zero_keeps_clusters_apart(imdb_schema):
    clusters = [
        intra_cluster_merge(y, _subgraphs(imdb_schema, 3, 3, y), {"director": 0.7, "actor": 0.7}, np.random.default_rng(i))
        for i, y in enumerate(imdb_schema.labels)
    ]
    before = sum(c.graph.num_nodes for c in clusters)
    g, _, gt, plans = inter_cluster_merge(clusters, {"director": 0.0, "actor": 0.0}, False, np.random.default_rng(0))
    assert g.num_nodes == before
    assert sum(len(p) for p in plans) == 0
    g2, _, _, plans2 = inter_cluster_merge(clusters, {"director": 0.5, "actor": 0.5}, False, np.random.default_rng(0))
    assert g2.num_nodes == before - sum(len(p) for p in plans2)
    g2.check()
