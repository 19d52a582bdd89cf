# Copyright 2020 Samson. All Rights Reserved.
# =============================================================================

"""Utilities and tools for reading GTD event data.
"""

import json
import logging
import os
import re
from dataclasses import dataclass
from typing import Optional, Tuple

import pandas as pd

from .errors import ConfigError, DataError, ParseError
from .graph import TimeWindow

logger = logging.getLogger(__name__)

UNKNOWN_GROUP = None

EVENT_FIELDS = (
    "event_id", "year", "month", "day",
    "country", "region",
    "groups", "attack_types", "target_types", "weapon_types",
    "killed", "wounded",
    "related_ids", "multi_incident",
)

_INT_FIELDS = ("year", "month", "day", "killed", "wounded")

MAX_ARITY = {
    "groups": 3,
    "attack_types": 3,
    "target_types": 3,
    "weapon_types": 4,
}

DEFAULT_MAPPING = {
    "event_id": ["eventid"],
    "year": ["iyear"],
    "month": ["imonth"],
    "day": ["iday"],
    "country": ["country_txt"],
    "region": ["region_txt"],
    "groups": ["gname", "gname2", "gname3"],
    "attack_types": ["attacktype1_txt", "attacktype2_txt", "attacktype3_txt"],
    "target_types": ["targtype1_txt", "targtype2_txt", "targtype3_txt"],
    "weapon_types": ["weaptype1_txt", "weaptype2_txt",
                     "weaptype3_txt", "weaptype4_txt"],
    "killed": ["nkill"],
    "wounded": ["nwound"],
    "related_ids": ["related"],
    "multi_incident": ["multiple"],
}

CBRNE_WEAPON_TYPES = frozenset({
    "Chemical",
    "Biological",
    "Radiological",
    "Nuclear",
    "Explosives",
    "Explosives/Bombs/Dynamite",
})

_TRUE_CELLS = frozenset({"1", "1.0", "true", "yes", "y"})


@dataclass(frozen=True)
class EventRecord:
    """One normalized incident.

    Unknown month, day, killed and wounded are None.
    List fields are stored as tuples.
    """
    event_id: str
    year: int
    month: Optional[int] = None
    day: Optional[int] = None
    country: str = ""
    region: str = ""
    groups: Tuple[str, ...] = ()
    attack_types: Tuple[str, ...] = ()
    target_types: Tuple[str, ...] = ()
    weapon_types: Tuple[str, ...] = ()
    killed: Optional[int] = None
    wounded: Optional[int] = None
    related_ids: Tuple[str, ...] = ()
    multi_incident: bool = False

    def __post_init__(self):
        for name in ("groups", "attack_types", "target_types",
                     "weapon_types", "related_ids"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

        if not self.event_id:
            raise DataError("Empty event id")
        if len(set(self.groups)) != len(self.groups):
            raise DataError("Duplicate group in event %s" % self.event_id,
                            event_id=self.event_id)
        if any(normalize_group_name(g) is UNKNOWN_GROUP for g in self.groups):
            raise DataError("Unknown group listed in event %s" % self.event_id,
                            event_id=self.event_id)
        for name, arity in MAX_ARITY.items():
            if len(getattr(self, name)) > arity:
                raise DataError(
                    "Too many %s in event %s (max %d)"
                    % (name, self.event_id, arity),
                    event_id=self.event_id)
        for name in ("killed", "wounded"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise DataError("Negative %s in event %s"
                                % (name, self.event_id),
                                event_id=self.event_id)

    def to_dict(self):
        data = {}
        for name in EVENT_FIELDS:
            value = getattr(self, name)
            if isinstance(value, tuple):
                value = list(value)
            data[name] = value
        return data

    @classmethod
    def from_dict(cls, data):
        """Build a record from one canonical event JSON object."""
        if not isinstance(data, dict):
            raise DataError("Invalid event object: %r" % (data,))
        missing = [name for name in EVENT_FIELDS if name not in data]
        extra = [name for name in data if name not in EVENT_FIELDS]
        if missing or extra:
            raise DataError("Invalid event object %s: missing %s, unexpected %s"
                            % (data.get("event_id"), missing, extra),
                            event_id=data.get("event_id"))
        for name in _INT_FIELDS:
            value = data[name]
            if value is None and name != "year":
                continue
            if isinstance(value, bool) or not isinstance(value, int):
                raise DataError("Invalid %s in event %s: %r"
                                % (name, data["event_id"], value),
                                event_id=data["event_id"])
        return cls(**{name: data[name] for name in EVENT_FIELDS})


@dataclass(frozen=True)
class FilterSpec:
    """Predicates applied by `filter_events()`.

    Every present field must hold for an event to be kept;
    `max_events` then truncates the survivors.
    """
    country: Optional[str] = None
    region: Optional[str] = None
    min_year: Optional[int] = None
    max_year: Optional[int] = None
    max_events: Optional[int] = None
    weapon_types: Optional[frozenset] = None
    window: Optional[TimeWindow] = None

    def __post_init__(self):
        if (self.min_year is not None and self.max_year is not None
                and self.min_year > self.max_year):
            raise ConfigError("Invalid year range: %s > %s"
                              % (self.min_year, self.max_year))
        if self.max_events is not None and self.max_events < 1:
            raise ConfigError("Invalid max_events: %s" % self.max_events)
        if self.weapon_types is not None:
            object.__setattr__(self, "weapon_types",
                               frozenset(self.weapon_types))

    def matches(self, event):
        if self.country is not None and event.country != self.country:
            return False
        if self.region is not None and event.region != self.region:
            return False
        if self.min_year is not None and event.year < self.min_year:
            return False
        if self.max_year is not None and event.year > self.max_year:
            return False
        if (self.weapon_types is not None
                and self.weapon_types.isdisjoint(event.weapon_types)):
            return False
        if (self.window is not None
                and not self.window.contains(event_date_key(event))):
            return False
        return True

    def summary(self):
        parts = []
        for name in ("country", "region", "min_year", "max_year",
                     "max_events", "window"):
            value = getattr(self, name)
            if value is not None:
                parts.append("%s=%s" % (name, value))
        if self.weapon_types is not None:
            parts.append("weapon_types=%s" % ",".join(sorted(self.weapon_types)))
        return " ".join(parts) if parts else "none"


def normalize_group_name(raw):
    """Canonicalize a perpetrator group name.

    Trims, collapses whitespace runs and keeps case.
    "Unknown" (any case) and blank names map to `UNKNOWN_GROUP`.
    """
    if raw is UNKNOWN_GROUP:
        return UNKNOWN_GROUP
    name = " ".join(str(raw).split())
    if not name or name.lower() == "unknown":
        return UNKNOWN_GROUP
    return name


def event_date_key(event):
    """Return a sortable (year, month, day) key, unknown parts as 1."""
    return (event.year, event.month or 1, event.day or 1)


def filter_events(events, spec=None):
    """Keep the events matching `spec`, in input order.

    Args:
        events: A list of EventRecord.
        spec: A FilterSpec or None (keep everything).

    Returns:
        A list of EventRecord.
    """
    if spec is None:
        return list(events)
    kept = [event for event in events if spec.matches(event)]
    if spec.max_events is not None:
        kept = kept[:spec.max_events]
    return kept


def read_key_value_file(path):
    """Read a `key=value` file, ignoring blank lines and `#` comments."""
    values = {}
    with open(path, encoding="utf-8") as f:
        for line_i, line in enumerate(f, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError("%s:%d: expected key=value, got %r"
                                  % (path, line_i, line))
            key, value = line.split("=", 1)
            values[key.strip()] = value.strip()
    return values


def resolve_mapping(mapping=None):
    """Merge a partial column mapping over `DEFAULT_MAPPING`.

    Values may be lists of column names or comma-separated strings.
    """
    resolved = {name: list(columns) for name, columns in DEFAULT_MAPPING.items()}
    for name, columns in (mapping or {}).items():
        if name not in DEFAULT_MAPPING:
            raise ConfigError("Invalid mapping field: %s" % name)
        if isinstance(columns, str):
            columns = [c.strip() for c in columns.split(",")]
        columns = [c for c in columns if c]
        if not columns:
            raise ConfigError("Empty mapping for field: %s" % name)
        resolved[name] = columns
    return resolved


def read_mapping(path):
    """Read a column mapping file (`field = col1, col2, ...`)."""
    return resolve_mapping(read_key_value_file(path))


def _to_number(cell, name, line):
    """Integral cell value; "3.0" is accepted, "1995.9" and "inf" are not."""
    try:
        value = float(cell)
    except ValueError:
        value = None
    if value is None or not value.is_integer():
        raise ParseError("Invalid %s: %r" % (name, cell), row=line)
    return int(value)


def _dedupe(values, arity=None):
    seen = []
    for value in values:
        if value and value not in seen:
            seen.append(value)
    return seen[:arity] if arity is not None else seen


def _parse_row(row, mapping, line):
    def cells(name):
        return [str(row[column]).strip() for column in mapping[name]]

    def first(name):
        for cell in cells(name):
            if cell:
                return cell
        return ""

    event_id = first("event_id")
    if not event_id:
        return None

    year_cell = first("year")
    if not year_cell:
        raise ParseError("Missing year for event %s" % event_id, row=line)
    year = _to_number(year_cell, "year", line)

    date = {}
    for name, upper in (("month", 12), ("day", 31)):
        cell = first(name)
        value = _to_number(cell, name, line) if cell else 0
        if value > upper:
            raise ParseError("Invalid %s: %r" % (name, cell), row=line)
        date[name] = value if value > 0 else None

    casualties = {}
    for name in ("killed", "wounded"):
        cell = first(name)
        value = _to_number(cell, name, line) if cell else -1
        casualties[name] = value if value >= 0 else None

    groups = _dedupe((normalize_group_name(cell) for cell in cells("groups")),
                     MAX_ARITY["groups"])

    related = []
    for cell in cells("related_ids"):
        related.extend(part.strip() for part in cell.split(","))

    return EventRecord(
        event_id=event_id,
        year=year,
        month=date["month"],
        day=date["day"],
        country=first("country"),
        region=first("region"),
        groups=groups,
        attack_types=_dedupe(cells("attack_types"), MAX_ARITY["attack_types"]),
        target_types=_dedupe(cells("target_types"), MAX_ARITY["target_types"]),
        weapon_types=_dedupe(cells("weapon_types"), MAX_ARITY["weapon_types"]),
        killed=casualties["killed"],
        wounded=casualties["wounded"],
        related_ids=_dedupe(related),
        multi_incident=first("multi_incident").lower() in _TRUE_CELLS,
    )


def parse_csv(source, mapping=None, chunksize=10000):
    """Parse GTD-style CSV into event records.

    Args:
        source: A binary file-like object or a path,
            UTF-8 CSV with a header row.
        mapping: A dict or None,
            EventRecord field -> list of column names,
            merged over `DEFAULT_MAPPING`.
        chunksize: An integer,
            number of rows pandas reads per chunk.

    Returns:
        A list of EventRecord, one per data row with an event id.
    """
    mapping = resolve_mapping(mapping)
    needed = [column for columns in mapping.values() for column in columns]

    events = []
    seen_ids = set()
    skipped = 0
    line = 1
    try:
        reader = pd.read_csv(source,
                             dtype=str,
                             keep_default_na=False,
                             na_filter=False,
                             encoding="utf-8",
                             chunksize=chunksize)
        for chunk in reader:
            missing = [column for column in needed
                       if column not in chunk.columns]
            if missing:
                raise ConfigError("Missing mapped column: %s"
                                  % ", ".join(missing))
            chunk = chunk.fillna("")
            for row in chunk.to_dict(orient="records"):
                line += 1
                event = _parse_row(row, mapping, line)
                if event is None:
                    skipped += 1
                    logger.warning("row %d: missing event id, skipped", line)
                    continue
                if event.event_id in seen_ids:
                    raise DataError("Duplicate event id: %s" % event.event_id,
                                    event_id=event.event_id)
                seen_ids.add(event.event_id)
                events.append(event)
    except pd.errors.EmptyDataError:
        raise ParseError("Missing header row", row=1) from None
    except pd.errors.ParserError as e:
        match = re.search(r"line (\d+)", str(e))
        row = int(match.group(1)) if match else None
        raise ParseError("Malformed CSV: %s" % e, row=row) from None
    except UnicodeDecodeError as e:
        raise ParseError("Input is not UTF-8: %s" % e, row=None) from None

    logger.info("parsed %d events (%d rows skipped)", len(events), skipped)
    return events


def read_csv(path, mapping=None, filter_spec=None):
    """Read and optionally filter a GTD CSV file."""
    if not os.path.isfile(path):
        raise FileNotFoundError("No such input file: %s" % path)
    with open(path, "rb") as f:
        events = parse_csv(f, mapping)
    return filter_events(events, filter_spec)


def events_to_json(events):
    """Serialize events as canonical event JSON text."""
    return json.dumps([event.to_dict() for event in events],
                      indent=2, ensure_ascii=False) + "\n"


def write_events_json(events, path):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(events_to_json(events))


def read_events_json(path):
    """Read canonical event JSON into a list of EventRecord."""
    with open(path, encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise ParseError("Invalid event JSON: %s" % e.msg,
                             row=e.lineno) from None
    if not isinstance(data, list):
        raise DataError("Event JSON must be an array")

    events = []
    seen_ids = set()
    for item in data:
        event = EventRecord.from_dict(item)
        if event.event_id in seen_ids:
            raise DataError("Duplicate event id: %s" % event.event_id,
                            event_id=event.event_id)
        seen_ids.add(event.event_id)
        events.append(event)
    return events
