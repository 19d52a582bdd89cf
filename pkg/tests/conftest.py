import io
import os
import random

import pandas as pd
import pytest

from utils.graph import EdgeKind, HeteroGraph, NodeKind
from utils.tools import EventRecord, read_csv

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")
SAMPLE_CSV = os.path.join(DATA_DIR, "gtd_sample.csv")
GOLDEN_DIR = os.path.join(DATA_DIR, "golden")

CSV_COLUMNS = [
    "eventid", "iyear", "imonth", "iday", "country_txt", "region_txt",
    "gname", "gname2", "gname3",
    "attacktype1_txt", "attacktype2_txt", "attacktype3_txt",
    "targtype1_txt", "targtype2_txt", "targtype3_txt",
    "weaptype1_txt", "weaptype2_txt", "weaptype3_txt", "weaptype4_txt",
    "nkill", "nwound", "related", "multiple",
]


def make_event(event_id, year, groups=(), **fields):
    return EventRecord(event_id=str(event_id), year=year,
                       groups=tuple(groups), **fields)


def csv_source(rows, columns=CSV_COLUMNS):
    """In-memory GTD-style CSV from a list of partial row dicts."""
    frame = pd.DataFrame(rows, columns=columns).fillna("")
    return io.BytesIO(frame.to_csv(index=False).encode("utf-8"))


def random_group_graph(rng, n_nodes, p_edge=0.4, kind=NodeKind.GROUP):
    """Random weighted HeteroGraph over `n_nodes` nodes of one kind."""
    g = HeteroGraph("random")
    keys = [g.upsert_node(kind, "n%02d" % i) for i in range(n_nodes)]
    for i in range(n_nodes):
        for j in range(i + 1, n_nodes):
            if rng.random() < p_edge:
                g.accumulate_edge(keys[i], keys[j], EdgeKind.ASSOCIATED_WITH,
                                  rng.uniform(0.5, 5.0))
    return g


def random_events(rng, n_events, n_groups, first_year=1990, last_year=2017):
    events = []
    for i in range(n_events):
        groups = rng.sample(["g%02d" % j for j in range(n_groups)],
                            rng.randint(0, min(3, n_groups)))
        events.append(make_event(
            "e%04d" % i, rng.randint(first_year, last_year), groups,
            month=rng.choice([None, rng.randint(1, 12)]),
            weapon_types=tuple(rng.sample(["Firearms", "Explosives",
                                           "Incendiary", "Melee"],
                                          rng.randint(0, 2))),
            killed=rng.randint(1, 50),
            wounded=rng.choice([None, rng.randint(0, 50)])))
    return events


@pytest.fixture(scope="session")
def sample_events():
    return read_csv(SAMPLE_CSV)


@pytest.fixture
def rng():
    return random.Random(20190)
