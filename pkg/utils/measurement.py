# Copyright 2021 Samson. All Rights Reserved.
# =============================================================================

"""Structural measurements for HeteroGraph.
"""

import numpy as np
import pandas as pd
import networkx as nx
from .errors import UndefinedMetricError
from .graph import degree_stats
from .community import detect_communities, modularity

METRIC_COLUMNS = ["nodes", "edges", "average_degree",
                  "modularity", "average_path_length",
                  "communities", "components"]


def average_path_length(g):
    """Mean unweighted shortest-path length over reachable pairs.

    Disconnected pairs are excluded.

    Args:
        g: A HeteroGraph with at least 2 nodes.

    Return:
        A float.
    """
    simple = g.to_networkx()
    if simple.number_of_nodes() < 2:
        raise UndefinedMetricError(
            "Average path length needs at least 2 nodes")

    total = 0
    pairs = 0
    for source in simple:
        lengths = nx.single_source_shortest_path_length(simple, source)
        for target, length in lengths.items():
            if source < target:
                total += length
                pairs += 1
    if pairs == 0:
        raise UndefinedMetricError("Average path length: no reachable pair")
    return total/pairs


def count_components(g):
    """Number of connected components (0 for an empty graph)."""
    return nx.number_connected_components(g.graph)


def structure_summary(g, verbose=False):
    """Create a metric row for one graph.

    Args:
        g: A HeteroGraph.
        verbose: A boolean, passed to community detection.

    Return:
        A Pandas.Series indexed by `METRIC_COLUMNS`;
        undefined metrics are NaN.
    """
    row = pd.Series(np.nan, index=METRIC_COLUMNS, dtype="float64")
    row["nodes"] = g.number_of_nodes()
    row["edges"] = g.number_of_edges()
    row["components"] = count_components(g)
    if g.number_of_nodes() == 0:
        row["communities"] = 0
        return row

    row["average_degree"], _ = degree_stats(g)
    partition = detect_communities(g, verbose=verbose)
    row["communities"] = partition.size
    try:
        row["modularity"] = modularity(g, partition)
    except UndefinedMetricError:
        pass
    try:
        row["average_path_length"] = average_path_length(g)
    except UndefinedMetricError:
        pass
    return row
