import numpy as np
import pytest

from hingen.graph import TypedGraph
from hingen.presets import get_preset, reference_graph
from hingen.reference import profile
from hingen.schema import make_schema


@pytest.fixture
def imdb_schema():
    return get_preset("imdb").schema


@pytest.fixture
def dblp_schema():
    return get_preset("dblp").schema


@pytest.fixture(scope="session")
def imdb_profile():
    return profile(reference_graph("imdb", seed=1))


@pytest.fixture(scope="session")
def small_imdb_profile():
    return profile(reference_graph("imdb", n_targets=400, seed=2))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_graph(schema, rng, n_nodes, n_edges):
    """Schema-legal random graph: uniform node types, edges from legal type pairs."""
    g = TypedGraph(schema)
    for _ in range(n_nodes):
        g.add_node(schema.node_types[int(rng.integers(len(schema.node_types)))])
    nodes = g.nodes()
    for _ in range(n_edges):
        u, v = (int(x) for x in rng.choice(nodes, size=2, replace=False))
        ets = schema.edge_types_between(g.node_type(u), g.node_type(v))
        if ets:
            g.add_edge(ets[int(rng.integers(len(ets)))].name, u, v)
    return g


def toy_schema():
    return make_schema("movie", [("movie", "director"), ("movie", "actor")], ["y1", "y2"])


_CRITERIA: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record one acceptance line: criterion(number, title, passed, detail)."""

    def record(num, title, passed, detail=""):
        line = f"[{'PASS' if passed else 'FAIL'}] {num:2d}. {title}" + (f" ({detail})" if detail else "")
        _CRITERIA[num] = line
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for num in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[num])
