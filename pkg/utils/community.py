# Copyright 2026 Samson. All Rights Reserved.
# =============================================================================

"""Modularity and deterministic Louvain community detection.
"""

import logging
from collections import defaultdict

import networkx as nx

from .errors import ConfigError, UndefinedMetricError

logger = logging.getLogger(__name__)

# Gains below this are treated as ties (float noise).
_GAIN_EPS = 1e-12


def _relabel(assignment):
    """Renumber community ids 0, 1, ... by first appearance
    in sorted node order."""
    new_ids = {}
    relabeled = {}
    for node in sorted(assignment):
        community = assignment[node]
        if community not in new_ids:
            new_ids[community] = len(new_ids)
        relabeled[node] = new_ids[community]
    return relabeled


class Partition(object):
    """Assignment of every graph node to one community.

    Args:
        assignment: A dict, node key -> community id,
            ids must be contiguous from 0.
    """

    def __init__(self, assignment):
        self.assignment = dict(assignment)
        ids = set(self.assignment.values())
        if ids != set(range(len(ids))):
            raise ConfigError("Invalid partition: community ids %s are "
                              "not contiguous from 0" % sorted(ids))

    @classmethod
    def from_communities(cls, communities):
        """Build a partition from an iterable of node collections."""
        assignment = {}
        for community_i, members in enumerate(communities):
            for node in members:
                if node in assignment:
                    raise ConfigError("Invalid partition: %s listed twice"
                                      % (node,))
                assignment[node] = community_i
        return cls(_relabel(assignment))

    @property
    def size(self):
        return len(set(self.assignment.values()))

    def communities(self):
        """Sorted member lists, indexed by community id."""
        members = [[] for _ in range(self.size)]
        for node in sorted(self.assignment):
            members[self.assignment[node]].append(node)
        return members

    def __getitem__(self, node):
        return self.assignment[node]

    def __contains__(self, node):
        return node in self.assignment

    def __iter__(self):
        return iter(sorted(self.assignment))

    def __len__(self):
        return len(self.assignment)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.assignment == other.assignment

    def __repr__(self):
        return "Partition(nodes=%d, communities=%d)" % (len(self), self.size)


def modularity(g, partition):
    """Weighted Newman modularity, see `networkx.community.modularity`.

    Args:
        g: A HeteroGraph with at least one edge.
        partition: A Partition covering every node of `g`.

    Returns:
        A float in [-0.5, 1).
    """
    simple = g.to_networkx()
    total = simple.size(weight="weight")
    if simple.number_of_edges() == 0 or total <= 0:
        raise UndefinedMetricError("Modularity of an edgeless graph")
    missing = [node for node in simple if node not in partition]
    if missing:
        raise ConfigError("Partition misses %d nodes, e.g. %s"
                          % (len(missing), missing[0]))

    communities = [[node for node in members if node in simple]
                   for members in partition.communities()]
    return nx.community.modularity(
        simple, [c for c in communities if c], weight="weight")


def _neighbor_weights(nbrs, node2com):
    weights = defaultdict(float)
    for nbr, weight in nbrs.items():
        weights[node2com[nbr]] += weight
    return weights


def _one_level(G, m, partition):
    """Local-moving phase on graph `G`.

    Nodes are visited in G's node order; a node moves only for a
    strictly positive gain, the first best community winning ties.
    """
    node2com = {u: i for i, u in enumerate(G.nodes())}
    inner_partition = [{u} for u in G.nodes()]
    degrees = dict(G.degree(weight="weight"))
    Stot = {i: degrees[u] for u, i in node2com.items()}
    nbrs = {u: {v: data["weight"] for v, data in G[u].items() if v != u}
            for u in G}

    improvement = False
    nb_moves = 1
    while nb_moves > 0:
        nb_moves = 0
        for u in G.nodes():
            best_gain = 0
            best_com = node2com[u]
            weights2com = _neighbor_weights(nbrs[u], node2com)
            degree = degrees[u]
            Stot[best_com] -= degree
            remove_cost = (-weights2com[best_com]/m
                           + Stot[best_com]*degree/(2*m**2))
            for nbr_com in sorted(weights2com):
                gain = (remove_cost + weights2com[nbr_com]/m
                        - Stot[nbr_com]*degree/(2*m**2))
                if gain - best_gain > _GAIN_EPS:
                    best_gain = gain
                    best_com = nbr_com
            Stot[best_com] += degree
            if best_com != node2com[u]:
                members = G.nodes[u].get("nodes", {u})
                partition[node2com[u]].difference_update(members)
                inner_partition[node2com[u]].remove(u)
                partition[best_com].update(members)
                inner_partition[best_com].add(u)
                node2com[u] = best_com
                improvement = True
                nb_moves += 1

    partition = [members for members in partition if members]
    inner_partition = [members for members in inner_partition if members]
    return partition, inner_partition, improvement


def _aggregate(G, inner_partition):
    """One node per community, intra weight kept as a self-loop."""
    H = nx.Graph()
    node2com = {}
    for i, part in enumerate(inner_partition):
        nodes = set()
        for node in part:
            node2com[node] = i
            nodes.update(G.nodes[node].get("nodes", {node}))
        H.add_node(i, nodes=nodes)

    for u, v, weight in G.edges(data="weight"):
        cu = node2com[u]
        cv = node2com[v]
        previous = H.get_edge_data(cu, cv, {"weight": 0})["weight"]
        H.add_edge(cu, cv, weight=weight + previous)
    return H


def detect_communities(g, max_level=None, verbose=False):
    """Detect communities by deterministic Louvain modularity maximization.

    Args:
        g: A HeteroGraph (weights are summed over edge kinds).
        max_level: An integer or None,
            the maximum number of aggregation levels.
        verbose: A boolean,
            whether to log every level at INFO level.

    Returns:
        A Partition.
    """
    if max_level is not None and max_level < 1:
        raise ConfigError("Invalid max_level: %s" % max_level)
    G = g.to_networkx()
    nodes = list(G.nodes())
    if G.number_of_edges() == 0:
        return Partition({node: i for i, node in enumerate(nodes)})

    m = G.size(weight="weight")
    log = logger.info if verbose else logger.debug
    partition = [{u} for u in nodes]
    level = 0
    while True:
        partition, inner_partition, improvement = _one_level(G, m, partition)
        level += 1
        log("level %2d: %d communities", level, len(partition))
        if not improvement:
            break
        if max_level is not None and level >= max_level:
            break
        G = _aggregate(G, inner_partition)

    return Partition.from_communities(partition)
