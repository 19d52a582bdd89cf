import logging

import numpy as np
import pytest

from conftest import random_group_graph
from utils.errors import ConfigError, EmptyGraphError
from utils.graph import EdgeKind, HeteroGraph, NodeKind
from utils.pagerank import pagerank, transition_matrix


def dense_oracle(g, damping=0.85, max_iter=5000):
    """Plain power iteration on an explicitly built Google matrix."""
    nodes = g.nodes()
    index = {key: i for i, key in enumerate(nodes)}
    n = len(nodes)
    A = np.zeros((n, n))
    for u, v, _, weight, _ in g.edges():
        A[index[u], index[v]] += weight
        A[index[v], index[u]] += weight

    M = np.zeros((n, n))
    for i in range(n):
        row_sum = A[i].sum()
        if row_sum > 0:
            M[i] = A[i]/row_sum
        else:
            M[i] = 1.0/n
    google = damping*M + (1 - damping)/n

    x = np.full(n, 1.0/n)
    for _ in range(max_iter):
        x_next = x @ google
        if np.abs(x_next - x).sum() < 1e-14:
            break
        x = x_next
    return {key: x_next[index[key]] for key in nodes}


def _edge(a, b, weight=1.0):
    g = HeteroGraph()
    ka = g.upsert_node(NodeKind.GROUP, a)
    kb = g.upsert_node(NodeKind.GROUP, b)
    g.accumulate_edge(ka, kb, EdgeKind.ASSOCIATED_WITH, weight)
    return g


def test_single_edge_is_symmetric():
    result = pagerank(_edge("a", "b"))
    assert result.converged
    assert result.scores[(NodeKind.GROUP, "a")] == pytest.approx(0.5)
    assert result.scores[(NodeKind.GROUP, "b")] == pytest.approx(0.5)


def test_regular_graph_is_uniform():
    g = HeteroGraph()
    keys = [g.upsert_node(NodeKind.GROUP, "n%d" % i) for i in range(6)]
    for i in range(6):
        g.accumulate_edge(keys[i], keys[(i + 1) % 6], EdgeKind.ASSOCIATED_WITH)
    scores = pagerank(g).scores
    assert all(score == pytest.approx(1/6, abs=1e-12)
               for score in scores.values())


def test_matches_dense_oracle(rng):
    for _ in range(50):
        g = random_group_graph(rng, rng.randint(1, 10), p_edge=0.35)
        result = pagerank(g, tol=1e-12, max_iter=1000)
        expected = dense_oracle(g)
        assert result.converged
        for key, score in expected.items():
            assert result.scores[key] == pytest.approx(score, abs=1e-8)


def test_scores_sum_to_one_and_scale_invariant(rng):
    for _ in range(20):
        g = random_group_graph(rng, rng.randint(2, 10))
        scaled = HeteroGraph()
        for key in g.nodes():
            scaled.upsert_node(*key)
        factor = rng.uniform(0.01, 100.0)
        for u, v, kind, weight, _ in g.edges():
            scaled.accumulate_edge(u, v, kind, weight*factor)

        scores = pagerank(g, tol=1e-12, max_iter=1000).scores
        scaled_scores = pagerank(scaled, tol=1e-12, max_iter=1000).scores
        assert sum(scores.values()) == pytest.approx(1.0, abs=1e-9)
        for key in scores:
            assert scaled_scores[key] == pytest.approx(scores[key], abs=1e-8)


def test_dangling_nodes_share_uniformly():
    g = _edge("a", "b")
    g.upsert_node(NodeKind.GROUP, "c")
    nodelist, P, dangling = transition_matrix(g)
    assert nodelist[2] == (NodeKind.GROUP, "c")
    assert dangling.tolist() == [False, False, True]
    assert P[0].tolist() == [0.0, 1.0, 0.0]

    scores = pagerank(g).scores
    expected = dense_oracle(g)
    for key in scores:
        assert scores[key] == pytest.approx(expected[key], abs=1e-8)


def test_non_convergence_is_flagged(caplog, rng):
    g = random_group_graph(rng, 8, p_edge=0.5)
    with caplog.at_level(logging.WARNING, logger="utils.pagerank"):
        result = pagerank(g, tol=1e-15, max_iter=1)
    assert not result.converged
    assert result.iterations == 1
    assert sum(result.scores.values()) == pytest.approx(1.0)
    assert "did not converge" in caplog.text


def test_verbose_logs_iterations(caplog):
    with caplog.at_level(logging.INFO, logger="utils.pagerank"):
        result = pagerank(_edge("a", "b"), verbose=True)
    assert "iteration   1" in caplog.text
    assert result.iterations >= 1


@pytest.mark.parametrize("kwargs", [
    {"damping": 0.0}, {"damping": 1.0}, {"tol": 0.0}, {"max_iter": 0},
])
def test_invalid_parameters(kwargs):
    with pytest.raises(ConfigError):
        pagerank(_edge("a", "b"), **kwargs)


def test_empty_graph():
    with pytest.raises(EmptyGraphError):
        pagerank(HeteroGraph())
