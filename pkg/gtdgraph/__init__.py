# Copyright 2026 Samson. All Rights Reserved.
# =============================================================================

"""Temporal graph analysis of GTD event data.
"""

__version__ = "1.0"
__author__ = "Samson Woof"

from os import path
import sys
sys.path.append(path.join(path.dirname(__file__), '..'))

from utils import tools
from utils.errors import ConfigError
from utils.community import detect_communities, modularity
from utils.graph import write_graph
from .builders import build_event_graph
from .builders import build_group_weapon_graph
from .builders import build_weapon_projection
from .builders import build_association_graph
from .builders import build_lethality_graph
from .builders import build_group_ego_timeline
from .builders import summarize_ego_timeline
from .builders import count_temporal_dyads
from .builders import yearly_frequency
from .builders import DEFAULT_ERAS
from .metrics import top_k_lethal, era_metrics, association_hubs


class View_type(object):
    event = "event"
    weapon_bipartite = "weapon-bipartite"
    weapon_projection = "weapon-projection"
    association = "association"
    lethality = "lethality"
    ego = "ego"


class GtdGraph(object):
    """GtdGraph class.

    Use read_csv() or read_events() to load events,
    build_view() to build one of the graph views and
    the analysis methods (top_k_lethal(), communities(),
    era_metrics(), dyads(), yearly_frequency(), hubs())
    to analyze them.

    Args:
        events: A list of EventRecord, default: empty.

    Attributes:
        events: A list of EventRecord.
    """

    def __init__(self, events=None):
        self.events = list(events or [])

    def read_csv(self, csv_path,
                 mapping=None,
                 filter_spec=None):
        """Read GTD-style CSV.

        Args:
            csv_path: A string, path of the CSV file.
            mapping: A dict, a mapping file path or None,
                EventRecord field -> source column names.
            filter_spec: A FilterSpec or None.

        Returns:
            A list of EventRecord.
        """
        if isinstance(mapping, str):
            mapping = tools.read_mapping(mapping)
        self.events = tools.read_csv(csv_path,
                                     mapping=mapping,
                                     filter_spec=filter_spec)
        return self.events

    def read_events(self, json_path):
        """Read canonical event JSON."""
        self.events = tools.read_events_json(json_path)
        return self.events

    def write_events(self, json_path):
        tools.write_events_json(self.events, json_path)

    def select(self, window=None):
        """Events inside `window` (all events if None)."""
        if window is None:
            return list(self.events)
        return tools.filter_events(self.events,
                                   tools.FilterSpec(window=window))

    def build_view(self, view, window=None, weighting="shared-count"):
        """Build one graph view.

        Args:
            view: A string, one of "event", "weapon-bipartite",
                "weapon-projection", "association", "lethality".
                Use ego_timeline() for "ego".
            window: A TimeWindow or None,
                restricts the events the view is built from.
            weighting: A string, "shared-count" or "jaccard",
                only for "weapon-projection".

        Returns:
            A HeteroGraph.
        """
        if view == View_type.association:
            return build_association_graph(self.events, window)

        events = self.select(window)
        if view == View_type.event:
            return build_event_graph(events)
        elif view == View_type.weapon_bipartite:
            return build_group_weapon_graph(events)
        elif view == View_type.weapon_projection:
            return build_weapon_projection(events, weighting=weighting)
        elif view == View_type.lethality:
            return build_lethality_graph(events)
        else:
            raise ConfigError("Invalid view: %s" % view)

    def ego_timeline(self, group, span, step):
        """Ego graphs of `group` over `step`-month windows of `span`.

        Returns:
            A tuple (timeline, summary): a list of
            (TimeWindow, HeteroGraph) and a Pandas.Dataframe.
        """
        timeline = build_group_ego_timeline(self.events, group, span, step)
        return timeline, summarize_ego_timeline(timeline, group)

    def top_k_lethal(self, k=10, **kwargs):
        """Top-k lethal groups, see `gtdgraph.metrics.top_k_lethal`."""
        return top_k_lethal(self.events, k, **kwargs)

    def communities(self, window=None, verbose=False):
        """Communities of the association graph.

        Returns:
            A tuple (graph, partition, modularity or None).
        """
        g = build_association_graph(self.events, window)
        partition = detect_communities(g, verbose=verbose)
        q = modularity(g, partition) if g.number_of_edges() > 0 else None
        return g, partition, q

    def era_metrics(self, eras=DEFAULT_ERAS, verbose=False):
        return era_metrics(self.events, eras, verbose=verbose)

    def dyads(self, eras=DEFAULT_ERAS):
        return count_temporal_dyads(self.events, eras)

    def yearly_frequency(self):
        return yearly_frequency(self.events)

    def hubs(self, eras=DEFAULT_ERAS, k=5):
        return association_hubs(self.events, eras, k)

    @staticmethod
    def write_graph(g, path_stem, formats=("json",)):
        return write_graph(g, path_stem, formats)
