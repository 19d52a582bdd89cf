import pandas as pd

from utils.errors import ConfigError
from utils.graph import NodeKind
from utils.measurement import METRIC_COLUMNS, structure_summary
from utils.pagerank import pagerank
from gtdgraph.builders import build_association_graph, build_lethality_graph


class RankedList(object):
    """Top-k (node key, score) pairs.

    Scores are non-increasing; ties are ordered by node key.

    Attributes:
        entries: A list of (node key, score).
        k: An integer, the number of entries.
        converged: A boolean, whether PageRank converged.
    """

    def __init__(self, entries, converged=True):
        self.entries = list(entries)
        self.converged = converged
        for (key_a, score_a), (key_b, score_b) in zip(self.entries,
                                                      self.entries[1:]):
            if score_a < score_b or (score_a == score_b and key_a > key_b):
                raise ValueError("Ranking out of order at %s" % (key_b,))

    @property
    def k(self):
        return len(self.entries)

    def groups(self):
        return [key[1] for key, _ in self.entries]

    def to_records(self):
        """Ordered [{"group": ..., "score": ...}] list."""
        return [{"group": key[1], "score": score}
                for key, score in self.entries]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, idx):
        return self.entries[idx]


def top_k_lethal(events, k=10,
                 damping=0.85, tol=1e-9, max_iter=200,
                 mode="sum"):
    """Rank groups by PageRank on the casualty-weighted
    event-group graph.

    Args:
        events: A list of EventRecord.
        k: An integer >= 1; clamped to the number of groups.
        damping, tol, max_iter: PageRank parameters.
        mode: A string, casualty definition,
            one of "sum", "killed", "wounded".

    Returns:
        A RankedList over Group nodes, scores renormalized
        to sum to 1 over all groups.
    """
    if k < 1:
        raise ConfigError("Invalid k: %s" % k)
    g = build_lethality_graph(events, mode=mode)
    if g.number_of_nodes() == 0:
        return RankedList([])

    result = pagerank(g, damping=damping, tol=tol, max_iter=max_iter)
    group_scores = {key: score for key, score in result.scores.items()
                    if key[0] == NodeKind.GROUP}
    total = sum(group_scores.values())
    ranked = sorted(((key, score/total) for key, score in group_scores.items()),
                    key=lambda item: (-item[1], item[0]))
    return RankedList(ranked[:k], converged=result.converged)


def era_metrics(events, eras, verbose=False):
    """Structural metrics of the association graph of every era.

    Args:
        events: A list of EventRecord.
        eras: A non-empty EraSpec (or list of TimeWindow).
        verbose: A boolean, passed to community detection.

    Return:
        A Pandas.Dataframe, one row per era, with `window` followed by
        `nodes`, `edges`, `average_degree`, `modularity`,
        `average_path_length`, `communities` and `components`.
        Undefined metrics (empty or edgeless eras) are NaN.
    """
    windows = list(eras)
    if not windows:
        raise ConfigError("No eras given")

    rows = []
    for window in windows:
        g = build_association_graph(events, window)
        row = structure_summary(g, verbose=verbose)
        rows.append({"window": str(window), **row.to_dict()})

    table = pd.DataFrame(rows, columns=["window"] + METRIC_COLUMNS)
    for column in ("nodes", "edges", "communities", "components"):
        table[column] = table[column].astype("int64")
    return table


def association_hubs(events, eras, k=5):
    """Groups with the strongest co-attribution ties per era.

    Return:
        A Pandas.Dataframe with `window`, `rank`, `group`, `strength`
        (total association weight) and `degree`; ties by group name.
    """
    if k < 1:
        raise ConfigError("Invalid k: %s" % k)
    rows = []
    for window in eras:
        g = build_association_graph(events, window)
        ranked = sorted(g.nodes(NodeKind.GROUP),
                        key=lambda key: (-g.strength(key), key))
        for rank, key in enumerate(ranked[:k], start=1):
            rows.append((str(window), rank, key[1],
                         float(g.strength(key)), g.degree(key)))
    return pd.DataFrame(rows, columns=["window", "rank", "group",
                                       "strength", "degree"])
