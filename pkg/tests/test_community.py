import networkx as nx
import pytest

from conftest import random_group_graph
from utils.community import Partition, detect_communities, modularity
from utils.errors import ConfigError, UndefinedMetricError
from utils.graph import EdgeKind, HeteroGraph, NodeKind


def _graph(edges, isolated=()):
    g = HeteroGraph()
    for label in isolated:
        g.upsert_node(NodeKind.GROUP, label)
    for a, b, *weight in edges:
        ka = g.upsert_node(NodeKind.GROUP, a)
        kb = g.upsert_node(NodeKind.GROUP, b)
        g.accumulate_edge(ka, kb, EdgeKind.ASSOCIATED_WITH,
                          weight[0] if weight else 1.0)
    return g


def _labels(partition):
    return [[key[1] for key in members] for members in partition.communities()]


def two_triangles():
    return _graph([("a", "b"), ("b", "c"), ("a", "c"),
                   ("d", "e"), ("e", "f"), ("d", "f")])


def pairwise_oracle(g, partition):
    """Q = 1/2m sum_ij [A_ij - k_i k_j / 2m] delta(c_i, c_j)."""
    simple = g.to_networkx()
    nodes = list(simple)
    two_m = 2*simple.size(weight="weight")
    strength = dict(simple.degree(weight="weight"))
    total = 0.0
    for i in nodes:
        for j in nodes:
            if partition[i] != partition[j]:
                continue
            a_ij = simple[i][j]["weight"] if simple.has_edge(i, j) else 0.0
            total += a_ij - strength[i]*strength[j]/two_m
    return total/two_m


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in set_partitions(rest):
        for i in range(len(smaller)):
            yield smaller[:i] + [[first] + smaller[i]] + smaller[i + 1:]
        yield [[first]] + smaller


def test_two_disjoint_triangles():
    g = two_triangles()
    partition = detect_communities(g)
    assert _labels(partition) == [["a", "b", "c"], ["d", "e", "f"]]
    assert modularity(g, partition) == pytest.approx(0.5)


def test_two_triangles_partition_is_optimal():
    g = two_triangles()
    best = max(set_partitions(g.nodes()),
               key=lambda p: modularity(g, Partition.from_communities(p)))
    assert Partition.from_communities(best) == detect_communities(g)


def test_bridged_triangles_split_at_bridge():
    g = _graph([("a", "b"), ("b", "c"), ("a", "c"),
                ("d", "e"), ("e", "f"), ("d", "f"), ("c", "d")])
    assert _labels(detect_communities(g)) \
        == [["a", "b", "c"], ["d", "e", "f"]]


def test_single_edge_is_one_community():
    g = _graph([("a", "b")])
    partition = detect_communities(g)
    assert partition.size == 1
    assert modularity(g, partition) == pytest.approx(0.0, abs=1e-12)


def test_clique_is_one_community():
    labels = "abcde"
    g = _graph([(x, y) for i, x in enumerate(labels) for y in labels[i + 1:]])
    assert detect_communities(g).size == 1


def test_edgeless_graph_gives_singletons():
    g = _graph([], isolated=["a", "b", "c"])
    partition = detect_communities(g)
    assert partition.size == 3
    with pytest.raises(UndefinedMetricError):
        modularity(g, partition)


def test_isolated_node_keeps_own_community():
    g = _graph([("a", "b"), ("b", "c"), ("a", "c")], isolated=["z"])
    assert _labels(detect_communities(g)) == [["a", "b", "c"], ["z"]]


def test_detection_is_deterministic(rng):
    g = random_group_graph(rng, 15, p_edge=0.25)
    first = detect_communities(g)
    for _ in range(10):
        assert detect_communities(g) == first

    shuffled = HeteroGraph()
    rows = g.edges()
    rng.shuffle(rows)
    for key in reversed(g.nodes()):
        shuffled.upsert_node(*key)
    for u, v, kind, weight, _ in rows:
        shuffled.accumulate_edge(v, u, kind, weight)
    assert detect_communities(shuffled) == first


def test_modularity_matches_pairwise_oracle(rng):
    checked = 0
    while checked < 20:
        n = rng.randint(2, 15)
        g = random_group_graph(rng, n, p_edge=0.3)
        if g.number_of_edges() == 0:
            continue
        k = rng.randint(1, n)
        assignment = {key: rng.randrange(k) for key in g.nodes()}
        partition = Partition.from_communities(
            [[key for key in assignment if assignment[key] == c]
             for c in range(k) if c in assignment.values()])
        assert modularity(g, partition) \
            == pytest.approx(pairwise_oracle(g, partition), abs=1e-12)
        communities = [set(members) for members in partition.communities()]
        assert modularity(g, partition) == pytest.approx(
            nx.community.modularity(g.to_networkx(), communities,
                                    weight="weight"), abs=1e-12)
        checked += 1


def test_single_community_has_zero_modularity(rng):
    for _ in range(20):
        g = random_group_graph(rng, rng.randint(2, 12), p_edge=0.5)
        if g.number_of_edges() == 0:
            continue
        whole = Partition({key: 0 for key in g.nodes()})
        assert modularity(g, whole) == pytest.approx(0.0, abs=1e-12)
        assert modularity(g, detect_communities(g)) >= -1e-12


def test_partition_validation():
    with pytest.raises(ConfigError):
        Partition({"a": 0, "b": 2})
    with pytest.raises(ConfigError):
        Partition.from_communities([["a"], ["a", "b"]])
    g = _graph([("a", "b")])
    with pytest.raises(ConfigError):
        modularity(g, Partition({(NodeKind.GROUP, "a"): 0}))


def test_partition_relabels_by_sorted_node_order():
    partition = Partition.from_communities([["c", "d"], ["a", "b"]])
    assert partition["a"] == 0 and partition["c"] == 1
    assert partition.communities() == [["a", "b"], ["c", "d"]]
    assert list(partition) == ["a", "b", "c", "d"]
    assert len(partition) == 4 and "a" in partition


def test_modularity_ignores_nodes_outside_graph():
    g = two_triangles()
    partition = detect_communities(g)
    extended = Partition.from_communities(
        partition.communities() + [[(NodeKind.GROUP, "z")]])
    assert modularity(g, extended) == pytest.approx(modularity(g, partition))
