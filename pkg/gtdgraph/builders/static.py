from utils.errors import ConfigError
from utils.graph import EdgeKind, HeteroGraph, NodeKind, bipartite_projection
from utils.tools import event_date_key


def casualties(event, mode="sum"):
    """Casualty count of an event, unknown parts counting as 0.

    Args:
        event: An EventRecord.
        mode: A string, one of "sum" (killed + wounded),
            "killed" and "wounded".
    """
    killed = event.killed or 0
    wounded = event.wounded or 0
    if mode == "sum":
        return killed + wounded
    elif mode == "killed":
        return killed
    elif mode == "wounded":
        return wounded
    else:
        raise ConfigError("Invalid casualty mode: %s" % mode)


def build_event_graph(events):
    """Event graph: events linked to their groups, weapon types,
    attack types and target types.

    Every edge has weight 1 and the event's date key as timestamp.
    Events without a known group still get their other edges.
    """
    g = HeteroGraph("event graph")
    for event in events:
        timestamp = event_date_key(event)
        event_key = g.upsert_node(NodeKind.EVENT, event.event_id,
                                  year=event.year,
                                  country=event.country,
                                  casualties=casualties(event))
        linked = (
            (NodeKind.GROUP, EdgeKind.PERPETRATED_BY, event.groups),
            (NodeKind.WEAPON_TYPE, EdgeKind.USED_WEAPON, event.weapon_types),
            (NodeKind.ATTACK_TYPE, EdgeKind.OF_ATTACK_TYPE, event.attack_types),
            (NodeKind.TARGET_TYPE, EdgeKind.TARGETED, event.target_types),
        )
        for node_kind, edge_kind, labels in linked:
            for label in labels:
                key = g.upsert_node(node_kind, label)
                g.accumulate_edge(event_key, key, edge_kind, 1.0, timestamp)
    return g


def build_group_weapon_graph(events):
    """Bipartite Group/WeaponType graph.

    Edge weight = number of events in which the group used the weapon.
    """
    g = HeteroGraph("group-weapon graph")
    for event in events:
        timestamp = event_date_key(event)
        for group in event.groups:
            group_key = g.upsert_node(NodeKind.GROUP, group)
            for weapon in event.weapon_types:
                weapon_key = g.upsert_node(NodeKind.WEAPON_TYPE, weapon)
                g.accumulate_edge(group_key, weapon_key,
                                  EdgeKind.USED_WEAPON, 1.0, timestamp)
    return g


def build_weapon_projection(events, weighting="shared-count"):
    """Groups linked by the weapon types they share."""
    return bipartite_projection(build_group_weapon_graph(events),
                                keep=NodeKind.GROUP,
                                via=NodeKind.WEAPON_TYPE,
                                weighting=weighting)
