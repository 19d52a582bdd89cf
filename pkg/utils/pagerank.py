"""Weighted PageRank by power iteration.
"""

import logging
from collections import namedtuple

import networkx as nx
import numpy as np

from .errors import ConfigError, EmptyGraphError

logger = logging.getLogger(__name__)

PageRankResult = namedtuple("PageRankResult",
                            ["scores", "converged", "iterations"])


def transition_matrix(g):
    """Row-stochastic transition matrix of an undirected HeteroGraph.

    Each undirected edge is two arcs; P[u, v] = w(u, v)/strength(u).

    Returns:
        (nodelist, P, dangling): sorted node keys, a 2D ndarray
        and a boolean mask of zero-strength rows.
    """
    nodelist = g.nodes()
    weights = nx.to_numpy_array(g.graph, nodelist=nodelist, weight="weight")
    strength = weights.sum(axis=1)
    dangling = strength <= 0
    P = np.zeros_like(weights)
    np.divide(weights, strength[:, None], out=P, where=~dangling[:, None])
    return nodelist, P, dangling


def pagerank(g, damping=0.85, tol=1e-9, max_iter=200, verbose=False):
    """Calculate PageRank scores of every node.

    Args:
        g: A non-empty HeteroGraph.
        damping: A float in (0, 1).
        tol: A float, stop when the L1 change of an
            iteration falls below it.
        max_iter: An integer,
            the maximum number of iterations.
        verbose: A boolean,
            whether to log every iteration at INFO level.

    Returns:
        A PageRankResult (scores, converged, iterations),
        scores maps node key -> score and sums to 1.
    """
    if not 0 < damping < 1:
        raise ConfigError("Invalid damping: %s" % damping)
    if not tol > 0:
        raise ConfigError("Invalid tol: %s" % tol)
    if max_iter < 1:
        raise ConfigError("Invalid max_iter: %s" % max_iter)
    if g.number_of_nodes() == 0:
        raise EmptyGraphError("PageRank of an empty graph")

    nodelist, P, dangling = transition_matrix(g)
    n = len(nodelist)
    x = np.full(n, 1.0/n)
    log = logger.info if verbose else logger.debug

    converged = False
    iteration = 0
    while iteration < max_iter:
        iteration += 1
        x_last = x
        x = damping*(x_last @ P + x_last[dangling].sum()/n) + (1 - damping)/n
        x = x/x.sum()
        change = np.abs(x - x_last).sum()
        log("iteration %3d: l1 change = %.3e", iteration, change)
        if change < tol:
            converged = True
            break

    if not converged:
        logger.warning("pagerank did not converge in %d iterations", max_iter)
    scores = {key: float(score) for key, score in zip(nodelist, x)}
    return PageRankResult(scores, converged, iteration)
