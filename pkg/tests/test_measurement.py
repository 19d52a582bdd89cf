import math

import pytest

from conftest import random_group_graph
from utils.errors import UndefinedMetricError
from utils.graph import EdgeKind, HeteroGraph, NodeKind
from utils.measurement import (METRIC_COLUMNS, average_path_length,
                               count_components, structure_summary)


def _graph(edges, isolated=()):
    g = HeteroGraph()
    for label in isolated:
        g.upsert_node(NodeKind.GROUP, label)
    for a, b in edges:
        g.accumulate_edge(g.upsert_node(NodeKind.GROUP, a),
                          g.upsert_node(NodeKind.GROUP, b),
                          EdgeKind.ASSOCIATED_WITH)
    return g


def floyd_warshall_apl(g):
    nodes = g.nodes()
    n = len(nodes)
    index = {key: i for i, key in enumerate(nodes)}
    dist = [[0 if i == j else math.inf for j in range(n)] for i in range(n)]
    for u, v, _, _, _ in g.edges():
        dist[index[u]][index[v]] = dist[index[v]][index[u]] = 1
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if dist[i][k] + dist[k][j] < dist[i][j]:
                    dist[i][j] = dist[i][k] + dist[k][j]
    lengths = [dist[i][j] for i in range(n) for j in range(i + 1, n)
               if dist[i][j] < math.inf]
    return sum(lengths)/len(lengths) if lengths else None


def test_path():
    assert average_path_length(_graph([("a", "b"), ("b", "c")])) == 4/3


def test_clique():
    labels = "abcd"
    g = _graph([(x, y) for i, x in enumerate(labels) for y in labels[i + 1:]])
    assert average_path_length(g) == 1.0


def test_disconnected_pairs_are_excluded():
    assert average_path_length(_graph([("a", "b"), ("c", "d")])) == 1.0


def test_undefined_path_length():
    with pytest.raises(UndefinedMetricError):
        average_path_length(_graph([], isolated=["a"]))
    with pytest.raises(UndefinedMetricError):
        average_path_length(_graph([], isolated=["a", "b"]))


def test_matches_floyd_warshall(rng):
    checked = 0
    while checked < 20:
        g = random_group_graph(rng, rng.randint(2, 30), p_edge=0.12)
        expected = floyd_warshall_apl(g)
        if expected is None:
            continue
        assert average_path_length(g) == expected
        checked += 1


def test_count_components():
    assert count_components(HeteroGraph()) == 0
    assert count_components(_graph([("a", "b"), ("c", "d")],
                                    isolated=["e"])) == 3


def test_structure_summary():
    g = _graph([("a", "b"), ("b", "c"), ("a", "c"), ("d", "e")])
    row = structure_summary(g)
    assert list(row.index) == METRIC_COLUMNS
    assert row["nodes"] == 5 and row["edges"] == 4
    assert row["average_degree"] == pytest.approx(1.6)
    assert row["communities"] == 2 and row["components"] == 2
    assert row["average_path_length"] == 1.0
    # 3/4 - (6/8)^2 + 1/4 - (2/8)^2
    assert row["modularity"] == pytest.approx(0.375)


def test_structure_summary_of_empty_and_edgeless_graphs():
    row = structure_summary(HeteroGraph())
    assert row["nodes"] == 0 and row["communities"] == 0
    assert math.isnan(row["average_degree"])
    assert math.isnan(row["modularity"])
    assert math.isnan(row["average_path_length"])

    row = structure_summary(_graph([], isolated=["a", "b"]))
    assert row["average_degree"] == 0.0
    assert row["communities"] == 2
    assert math.isnan(row["modularity"])
    assert math.isnan(row["average_path_length"])
