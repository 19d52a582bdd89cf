# Copyright 2026 Samson. All Rights Reserved.
# =============================================================================

"""Typed heterogeneous property graph and generic structural operations.
"""

import json
import logging
import re
from dataclasses import dataclass
from enum import Enum

import networkx as nx
from networkx.algorithms import bipartite

from .errors import (ConfigError, GraphError, MissingNodeError,
                     NotBipartiteError, SelfLoopError)

logger = logging.getLogger(__name__)

WEIGHT_TOLERANCE = 1e-9


class NodeKind(str, Enum):
    EVENT = "Event"
    GROUP = "Group"
    WEAPON_TYPE = "WeaponType"
    ATTACK_TYPE = "AttackType"
    TARGET_TYPE = "TargetType"

    def __str__(self):
        return self.value


class EdgeKind(str, Enum):
    USED_WEAPON = "UsedWeapon"
    OF_ATTACK_TYPE = "OfAttackType"
    TARGETED = "Targeted"
    PERPETRATED_BY = "PerpetratedBy"
    ASSOCIATED_WITH = "AssociatedWith"
    INFLICTED = "Inflicted"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class TimeWindow:
    """Inclusive interval of (year, month, day) date keys."""
    start: tuple
    end: tuple

    def __post_init__(self):
        object.__setattr__(self, "start", tuple(self.start))
        object.__setattr__(self, "end", tuple(self.end))
        if self.start > self.end:
            raise ConfigError("Invalid window: start %s > end %s"
                              % (self.start, self.end))

    @classmethod
    def from_years(cls, first_year, last_year):
        return cls((first_year, 1, 1), (last_year, 12, 31))

    @classmethod
    def from_months(cls, first, last):
        """Build a window from two (year, month) pairs."""
        return cls((first[0], first[1], 1), (last[0], last[1], 31))

    def contains(self, key):
        return self.start <= tuple(key) <= self.end

    def is_year_window(self):
        return self.start[1:] == (1, 1) and self.end[1:] == (12, 31)

    def __str__(self):
        if self.is_year_window():
            return "%d:%d" % (self.start[0], self.end[0])
        if self.start[2] == 1 and self.end[2] == 31:
            return "%d-%02d:%d-%02d" % (self.start[0], self.start[1],
                                        self.end[0], self.end[1])
        return "%d-%02d-%02d:%d-%02d-%02d" % (self.start + self.end)

    def slug(self):
        """File-name friendly form, e.g. `1990-2000`."""
        return str(self).replace(":", "-")


_WINDOW_RE = re.compile(r"^(\d{4})(?:-(\d{1,2}))?:(\d{4})(?:-(\d{1,2}))?$")


def parse_window(text):
    """Parse `YYYY:YYYY` or `YYYY-MM:YYYY-MM` into a TimeWindow."""
    match = _WINDOW_RE.match(str(text).strip())
    if match is None:
        raise ConfigError("Invalid window: %s" % text)
    first_year, first_month, last_year, last_month = match.groups()
    if (first_month is None) != (last_month is None):
        raise ConfigError("Invalid window: %s" % text)
    if first_month is None:
        return TimeWindow.from_years(int(first_year), int(last_year))
    for month in (first_month, last_month):
        if not 1 <= int(month) <= 12:
            raise ConfigError("Invalid window month: %s" % text)
    return TimeWindow.from_months((int(first_year), int(first_month)),
                                  (int(last_year), int(last_month)))


def month_windows(span, step):
    """Split `span` into consecutive `step`-month windows.

    The first window starts at `span.start`, the last one ends at
    `span.end` and may be shorter than `step` months.
    """
    if step < 1:
        raise ConfigError("Invalid step: %s" % step)
    first = span.start[0]*12 + span.start[1] - 1
    last = span.end[0]*12 + span.end[1] - 1

    windows = []
    for month_i in range(first, last + 1, step):
        end_i = min(month_i + step - 1, last)
        start = (month_i//12, month_i%12 + 1, 1)
        end = (end_i//12, end_i%12 + 1, 31)
        if month_i == first:
            start = span.start
        if end_i == last:
            end = span.end
        windows.append(TimeWindow(start, end))
    return windows


def _edge_endpoints(a, b):
    return (a, b) if a <= b else (b, a)


class HeteroGraph(object):
    """Undirected typed property graph.

    Nodes are keyed by (NodeKind, label). There is at most one edge
    per (endpoints, EdgeKind); accumulating on an existing edge adds
    to its weight and keeps the earliest timestamp.

    Attributes:
        graph: The underlying `networkx.MultiGraph`,
            edges keyed by EdgeKind.
    """

    def __init__(self, name=""):
        self.graph = nx.MultiGraph(name=name)

    def upsert_node(self, kind, label, **attributes):
        """Add a node if absent and return its key."""
        kind = NodeKind(kind)
        if label is None or str(label) == "":
            raise GraphError("Empty node label for kind %s" % kind)
        key = (kind, str(label))
        if key not in self.graph:
            self.graph.add_node(key, kind=kind, label=key[1])
        if attributes:
            self.graph.nodes[key].update(attributes)
        return key

    def accumulate_edge(self, a, b, kind, delta_weight=1.0, timestamp=None):
        """Add `delta_weight` to edge (a, b, kind), creating it if absent.

        Returns:
            The updated edge weight.
        """
        kind = EdgeKind(kind)
        if a == b:
            raise SelfLoopError("Self-loop on %s" % (a,))
        for key in (a, b):
            if key not in self.graph:
                raise MissingNodeError("Missing node: %s" % (key,))
        if not delta_weight > 0:
            raise GraphError("Invalid delta_weight: %s" % delta_weight)
        if timestamp is not None:
            timestamp = tuple(timestamp)

        if self.graph.has_edge(a, b, key=kind):
            data = self.graph.edges[a, b, kind]
            data["weight"] += delta_weight
            if timestamp is not None and (data["timestamp"] is None
                                          or timestamp < data["timestamp"]):
                data["timestamp"] = timestamp
        else:
            self.graph.add_edge(a, b, key=kind,
                                weight=float(delta_weight),
                                timestamp=timestamp)
            data = self.graph.edges[a, b, kind]
        return data["weight"]

    def has_node(self, key):
        return key in self.graph

    def node_attributes(self, key):
        return {k: v for k, v in self.graph.nodes[key].items()
                if k not in ("kind", "label")}

    def nodes(self, kind=None):
        """Sorted node keys, optionally of one kind."""
        keys = (key for key in self.graph.nodes
                if kind is None or key[0] == NodeKind(kind))
        return sorted(keys)

    def edges(self, kind=None):
        """Sorted (u, v, kind, weight, timestamp) tuples with u <= v."""
        rows = []
        for a, b, edge_kind, data in self.graph.edges(keys=True, data=True):
            if kind is not None and edge_kind != EdgeKind(kind):
                continue
            u, v = _edge_endpoints(a, b)
            rows.append((u, v, edge_kind, data["weight"], data["timestamp"]))
        return sorted(rows, key=lambda row: row[:3])

    def weight(self, a, b, kind):
        kind = EdgeKind(kind)
        if not self.graph.has_edge(a, b, key=kind):
            return 0.0
        return self.graph.edges[a, b, kind]["weight"]

    def neighbors(self, key):
        return sorted(self.graph.neighbors(key))

    def degree(self, key):
        return self.graph.degree(key)

    def strength(self, key):
        return self.graph.degree(key, weight="weight")

    def number_of_nodes(self):
        return self.graph.number_of_nodes()

    def number_of_edges(self):
        return self.graph.number_of_edges()

    def total_weight(self):
        return self.graph.size(weight="weight")

    def __len__(self):
        return self.graph.number_of_nodes()

    def __contains__(self, key):
        return key in self.graph

    def copy(self):
        other = HeteroGraph(self.graph.name)
        other.graph = self.graph.copy()
        return other

    def subgraph(self, keys):
        """Induced subgraph on `keys`, as a new HeteroGraph."""
        other = HeteroGraph(self.graph.name)
        other.graph = nx.MultiGraph(self.graph.subgraph(keys))
        return other

    def to_networkx(self):
        """Simple weighted `networkx.Graph`, parallel kinds summed.

        Nodes are inserted in sorted key order.
        """
        simple = nx.Graph()
        simple.add_nodes_from(self.nodes())
        for u, v, _, weight, _ in self.edges():
            if simple.has_edge(u, v):
                simple[u][v]["weight"] += weight
            else:
                simple.add_edge(u, v, weight=weight)
        return simple

    def __eq__(self, other):
        if not isinstance(other, HeteroGraph):
            return NotImplemented
        if set(self.graph.nodes) != set(other.graph.nodes):
            return False
        mine = {row[:3]: row[3] for row in self.edges()}
        theirs = {row[:3]: row[3] for row in other.edges()}
        if mine.keys() != theirs.keys():
            return False
        return all(abs(mine[key] - theirs[key]) <= WEIGHT_TOLERANCE
                   for key in mine)

    def __repr__(self):
        return "HeteroGraph(nodes=%d, edges=%d)" % (self.number_of_nodes(),
                                                    self.number_of_edges())


def window_subgraph(g, window):
    """Keep the timestamped edges inside `window` and their endpoints.

    Args:
        g: A HeteroGraph.
        window: A TimeWindow (start <= end is checked on construction).

    Returns:
        A new HeteroGraph.
    """
    sub = HeteroGraph(g.graph.name)
    for u, v, kind, weight, timestamp in g.edges():
        if timestamp is None or not window.contains(timestamp):
            continue
        for key in (u, v):
            sub.upsert_node(key[0], key[1], **g.node_attributes(key))
        sub.accumulate_edge(u, v, kind, weight, timestamp)
    return sub


def bipartite_projection(g, keep, via, weighting="shared-count"):
    """Project `g` onto the `keep` nodes through shared `via` neighbors.

    Args:
        g: A HeteroGraph whose keep/via edges only cross the two kinds.
        keep: A NodeKind, the kind to keep.
        via: A NodeKind, the kind that links kept nodes.
        weighting: A string,
            "shared-count": number of shared `via` neighbors.
            "jaccard": shared neighbors over the union of neighbors.

    Returns:
        A HeteroGraph over every `keep` node of `g` with
        AssociatedWith edges.
    """
    keep = NodeKind(keep)
    via = NodeKind(via)
    if keep == via:
        raise NotBipartiteError("Invalid projection: keep == via (%s)" % keep)

    two_mode = nx.Graph()
    keep_nodes = g.nodes(keep)
    two_mode.add_nodes_from(keep_nodes)
    two_mode.add_nodes_from(g.nodes(via))
    for u, v, kind, _, _ in g.edges():
        if u[0] == v[0]:
            raise NotBipartiteError("Edge within kind %s: %s -- %s"
                                    % (u[0], u[1], v[1]))
        if {u[0], v[0]} == {keep, via}:
            two_mode.add_edge(u, v)

    if weighting == "shared-count":
        projected = bipartite.weighted_projected_graph(two_mode, keep_nodes)
    elif weighting == "jaccard":
        projected = bipartite.overlap_weighted_projected_graph(
            two_mode, keep_nodes, jaccard=True)
    else:
        raise ConfigError("Invalid weighting: %s" % weighting)

    result = HeteroGraph("%s projection via %s" % (keep, via))
    for key in keep_nodes:
        result.upsert_node(key[0], key[1], **g.node_attributes(key))
    for u, v, weight in sorted(projected.edges(data="weight")):
        if weight > 0:
            result.accumulate_edge(u, v, EdgeKind.ASSOCIATED_WITH, weight)
    return result


def degree_stats(g):
    """Average degree (2|E|/|V|) and the per-node degree map."""
    degrees = {key: g.degree(key) for key in g.nodes()}
    if not degrees:
        return 0.0, degrees
    return 2*g.number_of_edges()/len(degrees), degrees


def _key_to_json(key):
    return [key[0].value, key[1]]


def _key_from_json(item):
    return (NodeKind(item[0]), item[1])


def graph_to_json(g):
    """Canonical JSON-ready dict: sorted nodes and sorted edge triples."""
    nodes = []
    for key in g.nodes():
        node = {"kind": key[0].value, "label": key[1]}
        attributes = g.node_attributes(key)
        if attributes:
            node["attributes"] = {k: attributes[k] for k in sorted(attributes)}
        nodes.append(node)

    edges = []
    for u, v, kind, weight, timestamp in g.edges():
        edges.append({
            "source": _key_to_json(u),
            "target": _key_to_json(v),
            "kind": kind.value,
            "weight": weight,
            "timestamp": list(timestamp) if timestamp is not None else None,
        })
    return {"nodes": nodes, "edges": edges}


def graph_from_json(data):
    g = HeteroGraph()
    for node in data["nodes"]:
        g.upsert_node(node["kind"], node["label"],
                      **node.get("attributes", {}))
    for edge in data["edges"]:
        g.accumulate_edge(_key_from_json(edge["source"]),
                          _key_from_json(edge["target"]),
                          edge["kind"], edge["weight"], edge["timestamp"])
    return g


def _export_graph(g, quote_colons=False):
    """MultiGraph with string ids and scalar attributes only."""
    def text(value):
        value = str(value)
        if quote_colons and ":" in value:
            value = '"%s"' % value.replace('"', '\\"')
        return value

    ids = {key: "n%d" % i for i, key in enumerate(g.nodes())}
    export = nx.MultiGraph()
    for key, node_id in ids.items():
        attributes = {k: text(v) if isinstance(v, str) else v
                      for k, v in g.node_attributes(key).items()}
        export.add_node(node_id, kind=key[0].value, label=text(key[1]),
                        **attributes)
    for u, v, kind, weight, timestamp in g.edges():
        export.add_edge(ids[u], ids[v], key=kind.value,
                        kind=kind.value, weight=weight,
                        timestamp=("%04d-%02d-%02d" % timestamp
                                   if timestamp is not None else ""))
    return export


def write_graph(g, path_stem, formats=("json",)):
    """Write `g` as `<path_stem>.json|.dot|.graphml`.

    Args:
        g: A HeteroGraph.
        path_stem: A string, output path without extension.
        formats: An iterable of "json", "dot" and "graphml".

    Returns:
        A list of written paths.
    """
    paths = []
    for fmt in formats:
        path = "%s.%s" % (path_stem, fmt)
        if fmt == "json":
            with open(path, "w", encoding="utf-8", newline="\n") as f:
                f.write(json.dumps(graph_to_json(g), indent=2,
                                   ensure_ascii=False) + "\n")
        elif fmt == "dot":
            nx.nx_pydot.write_dot(_export_graph(g, quote_colons=True), path)
        elif fmt == "graphml":
            nx.write_graphml(_export_graph(g), path)
        else:
            raise ConfigError("Invalid format: %s" % fmt)
        logger.debug("wrote %s", path)
        paths.append(path)
    return paths
