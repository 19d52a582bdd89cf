"""Time-windowed graph views and counts.
"""

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

import pandas as pd

from utils.errors import ConfigError
from utils.graph import (EdgeKind, HeteroGraph, NodeKind, TimeWindow,
                         month_windows)
from utils.tools import (UNKNOWN_GROUP, FilterSpec, event_date_key,
                         filter_events, normalize_group_name)
from .static import build_event_graph, casualties

# Floor for lethality edge weights of events without known casualties.
epsilon = 1e-06


class EraSpec(object):
    """Ordered, pairwise disjoint analysis windows.

    Args:
        windows: An iterable of TimeWindow, sorted by start.
    """

    def __init__(self, windows):
        self.windows = list(windows)
        for previous, window in zip(self.windows, self.windows[1:]):
            if not previous.end < window.start:
                raise ConfigError("Invalid eras: %s and %s overlap or are "
                                  "out of order" % (previous, window))

    def __iter__(self):
        return iter(self.windows)

    def __len__(self):
        return len(self.windows)

    def __repr__(self):
        return "EraSpec(%s)" % ", ".join(str(w) for w in self.windows)


DEFAULT_ERAS = EraSpec([
    TimeWindow.from_years(1990, 2000),
    TimeWindow.from_years(2001, 2010),
    TimeWindow.from_years(2011, 2017),
])


@dataclass(frozen=True)
class DyadCount:
    """Co-attributed group pair observed `count` times in `window`."""
    pair: tuple
    count: int
    window: TimeWindow

    def __post_init__(self):
        if self.count < 1:
            raise ConfigError("Invalid dyad count: %s" % self.count)
        if len(self.pair) != 2 or self.pair[0] == self.pair[1]:
            raise ConfigError("Invalid dyad pair: %s" % (self.pair,))


def _in_window(events, window):
    if window is None:
        return list(events)
    return filter_events(events, FilterSpec(window=window))


def _group_pairs(event):
    return combinations(sorted(event.groups), 2)


def build_association_graph(events, window=None):
    """Group-Group co-attribution graph.

    Every event in `window` with k >= 2 known groups adds weight 1 to
    each of its k(k-1)/2 group pairs.

    Args:
        events: A list of EventRecord.
        window: A TimeWindow or None (all events).

    Returns:
        A HeteroGraph of AssociatedWith edges; isolated groups are
        not added.
    """
    g = HeteroGraph("association graph")
    for event in _in_window(events, window):
        if len(event.groups) < 2:
            continue
        timestamp = event_date_key(event)
        for a, b in _group_pairs(event):
            a_key = g.upsert_node(NodeKind.GROUP, a)
            b_key = g.upsert_node(NodeKind.GROUP, b)
            g.accumulate_edge(a_key, b_key, EdgeKind.ASSOCIATED_WITH,
                              1.0, timestamp)
    return g


def build_lethality_graph(events, mode="sum"):
    """Event-Group graph weighted by casualties.

    Each known group of an event gets the event's full casualty
    count; events without casualties get weight `epsilon`.
    """
    g = HeteroGraph("lethality graph")
    for event in events:
        if not event.groups:
            continue
        timestamp = event_date_key(event)
        weight = max(float(casualties(event, mode)), epsilon)
        event_key = g.upsert_node(NodeKind.EVENT, event.event_id,
                                  year=event.year)
        for group in event.groups:
            group_key = g.upsert_node(NodeKind.GROUP, group)
            g.accumulate_edge(event_key, group_key, EdgeKind.INFLICTED,
                              weight, timestamp)
    return g


def build_group_ego_timeline(events, group, span, step):
    """Ego networks of one group over consecutive month windows.

    Args:
        events: A list of EventRecord.
        group: A string, the group name (normalized here).
        span: A TimeWindow to cover.
        step: An integer, months per window.

    Returns:
        A list of (TimeWindow, HeteroGraph); each graph is the event
        graph of the group's events in that window.
    """
    name = normalize_group_name(group)
    if name is UNKNOWN_GROUP:
        raise ConfigError("Invalid ego group: %r" % group)

    attributed = [event for event in events if name in event.groups]
    timeline = []
    for window in month_windows(span, step):
        g = build_event_graph(_in_window(attributed, window))
        g.graph.name = "%s ego %s" % (name, window)
        timeline.append((window, g))
    return timeline


def summarize_ego_timeline(timeline, group):
    """Activity, capability and target profile per ego window.

    Return:
        A Pandas.Dataframe with `window`, `events`, `casualties`,
        `weapon_types`, `attack_types`, `target_types` and
        `co_perpetrators` columns.
    """
    name = normalize_group_name(group)
    rows = []
    for window, g in timeline:
        event_keys = g.nodes(NodeKind.EVENT)
        groups = g.nodes(NodeKind.GROUP)
        rows.append({
            "window": str(window),
            "events": len(event_keys),
            "casualties": sum(g.node_attributes(key).get("casualties", 0)
                              for key in event_keys),
            "weapon_types": len(g.nodes(NodeKind.WEAPON_TYPE)),
            "attack_types": len(g.nodes(NodeKind.ATTACK_TYPE)),
            "target_types": len(g.nodes(NodeKind.TARGET_TYPE)),
            "co_perpetrators": len([key for key in groups if key[1] != name]),
        })
    return pd.DataFrame(rows, columns=["window", "events", "casualties",
                                       "weapon_types", "attack_types",
                                       "target_types", "co_perpetrators"])


def count_temporal_dyads(events, eras):
    """Count co-attributed group pairs per era window.

    Returns:
        A list of DyadCount, ordered by era then pair.
    """
    dyads = []
    for window in eras:
        counts = Counter()
        for event in _in_window(events, window):
            counts.update(_group_pairs(event))
        for pair in sorted(counts):
            dyads.append(DyadCount(pair, counts[pair], window))
    return dyads


def dyads_to_frame(dyads):
    return pd.DataFrame(
        [(str(d.window), d.pair[0], d.pair[1], d.count) for d in dyads],
        columns=["window", "group_a", "group_b", "count"])


def yearly_frequency(events):
    """Number of events per year, attributed or not."""
    counts = Counter(event.year for event in events)
    return {year: counts[year] for year in sorted(counts)}
