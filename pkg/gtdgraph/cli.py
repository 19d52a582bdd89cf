"""Command-line pipelines: ingest -> build -> analyze.

    python -m gtdgraph ingest --input gtd.csv --country "United States" \
        --min-year 1990 --out-dir out
    python -m gtdgraph build association --window 1990:2000 --out-dir out
    python -m gtdgraph analyze pagerank --k 10 --out-dir out
"""

import argparse
import json
import logging
import os
import re
import sys

import pandas as pd

from utils.errors import ConfigError, GtdGraphError
from utils.graph import TimeWindow, parse_window
from utils.tools import (CBRNE_WEAPON_TYPES, UNKNOWN_GROUP, FilterSpec,
                         normalize_group_name, read_key_value_file)
from . import GtdGraph, View_type
from .builders import EraSpec, DEFAULT_ERAS, dyads_to_frame

logger = logging.getLogger(__name__)

OUTPUT_DIR_ENV = "GTDGRAPH_OUTPUT_DIR"
EVENTS_FILE = "events.json"
FORMATS = ("json", "dot", "graphml")
VIEWS = (View_type.event, View_type.weapon_bipartite,
         View_type.weapon_projection, View_type.association,
         View_type.lethality, View_type.ego)
ANALYSES = ("pagerank", "communities", "metrics", "dyads", "yearly", "hubs")

# Flags that may be given more than once; comma-separated in a config file.
_REPEATABLE = ("era", "format", "weapon")


def slugify(text):
    """File-name friendly lowercase form of `text`."""
    return re.sub(r"[^0-9A-Za-z]+", "_", str(text)).strip("_").lower()


def write_table(frame, path):
    frame.to_csv(path, index=False, na_rep="", float_format="%.6f",
                 lineterminator="\n")
    logger.info("wrote %s (%d rows)", path, len(frame))


def write_json(data, path):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(json.dumps(data, indent=2, ensure_ascii=False) + "\n")
    logger.info("wrote %s", path)


class _Flags(object):
    """Adds flags to sub-parsers, taking defaults from the config file."""

    def __init__(self, config):
        self.config = {key.replace("-", "_"): value
                       for key, value in config.items()}
        self.known = set()

    def add(self, parser, flag, default=None, required=False, **kwargs):
        dest = flag.lstrip("-").replace("-", "_")
        self.known.add(dest)
        if dest in _REPEATABLE:
            # Resolved after parsing so command-line values replace the file's.
            parser.add_argument(flag, action="append", default=None, **kwargs)
            return
        if dest in self.config:
            default = self.config[dest]
            required = False
            if kwargs.get("action") == "store_true":
                default = default.lower() in ("1", "true", "yes", "y")
        parser.add_argument(flag, default=default, required=required, **kwargs)

    def repeated(self, args, dest):
        values = getattr(args, dest, None)
        if values is not None:
            return values
        if dest in self.config:
            return [v.strip() for v in self.config[dest].split(",")
                    if v.strip()]
        return None

    def check(self):
        unknown = sorted(set(self.config) - self.known)
        if unknown:
            raise ConfigError("Invalid config key: %s" % ", ".join(unknown))


def build_parser(config=None):
    """Create the argument parser.

    Args:
        config: A dict or None, key=value pairs of a config file,
            used as flag defaults.

    Returns:
        A tuple (parser, flags).
    """
    flags = _Flags(config or {})
    ap = argparse.ArgumentParser(
        prog="gtdgraph",
        description="Temporal heterogeneous graph analysis of GTD events.")
    commands = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file of flag defaults")
    flags.add(common, "--log-level", default="INFO",
              choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    flags.add(common, "--out-dir",
              default=os.environ.get(OUTPUT_DIR_ENV, "."),
              help="Output directory (default: $%s or .)" % OUTPUT_DIR_ENV)

    ingest = commands.add_parser("ingest", parents=[common],
                                 help="CSV -> canonical event JSON")
    flags.add(ingest, "--input", required=True, help="GTD-style CSV")
    flags.add(ingest, "--mapping", help="Column mapping file")
    flags.add(ingest, "--country")
    flags.add(ingest, "--region")
    flags.add(ingest, "--min-year", type=int)
    flags.add(ingest, "--max-year", type=int)
    flags.add(ingest, "--max-events", type=int)
    flags.add(ingest, "--weapon", help="Keep events using this weapon type")
    flags.add(ingest, "--cbrne", action="store_true",
              help="Keep CBRNE weapon events only")
    flags.add(ingest, "--out", help="Output path (default: <out-dir>/%s)"
              % EVENTS_FILE)
    ingest.set_defaults(func=cmd_ingest)

    build = commands.add_parser("build", parents=[common],
                                help="Events -> graph file(s)")
    build.add_argument("view", choices=VIEWS)
    flags.add(build, "--events", help="Event JSON (default: <out-dir>/%s)"
              % EVENTS_FILE)
    flags.add(build, "--window", type=parse_window,
              help="YYYY:YYYY or YYYY-MM:YYYY-MM")
    flags.add(build, "--group", help="Ego group name")
    flags.add(build, "--step", type=int, help="Ego window length in months")
    flags.add(build, "--format", choices=FORMATS)
    flags.add(build, "--weighting", default="shared-count",
              choices=["shared-count", "jaccard"])
    build.set_defaults(func=cmd_build)

    analyze = commands.add_parser("analyze", parents=[common],
                                  help="Events -> CSV/JSON report")
    analyze.add_argument("analysis", choices=ANALYSES)
    flags.add(analyze, "--events")
    flags.add(analyze, "--k", type=int)
    flags.add(analyze, "--damping", type=float, default=0.85)
    flags.add(analyze, "--tol", type=float, default=1e-9)
    flags.add(analyze, "--max-iter", type=int, default=200)
    flags.add(analyze, "--mode", default="sum",
              choices=["sum", "killed", "wounded"])
    flags.add(analyze, "--window", type=parse_window)
    flags.add(analyze, "--era", help="Era window, repeatable")
    analyze.set_defaults(func=cmd_analyze)

    flags.known.add("config")
    return ap, flags


def _events_path(args):
    return args.events or os.path.join(args.out_dir, EVENTS_FILE)


def _eras(args, flags):
    values = flags.repeated(args, "era")
    if not values:
        return DEFAULT_ERAS
    return EraSpec(parse_window(value) for value in values)


def cmd_ingest(args, flags):
    weapons = flags.repeated(args, "weapon")
    weapon_types = set(weapons) if weapons else None
    if args.cbrne:
        weapon_types = (weapon_types or set()) | CBRNE_WEAPON_TYPES
    spec = FilterSpec(country=args.country,
                      region=args.region,
                      min_year=args.min_year,
                      max_year=args.max_year,
                      max_events=args.max_events,
                      weapon_types=weapon_types)

    gtd = GtdGraph()
    events = gtd.read_csv(args.input, mapping=args.mapping, filter_spec=spec)
    out = args.out or os.path.join(args.out_dir, EVENTS_FILE)
    gtd.write_events(out)
    print("%d events written to %s (filters: %s)"
          % (len(events), out, spec.summary()))
    return 0


def _ego_span(events, group):
    years = [event.year for event in events if group in event.groups]
    if not years:
        raise ConfigError("Invalid ego group: %s has no events" % group)
    return TimeWindow.from_years(min(years), max(years))


def cmd_build(args, flags):
    formats = flags.repeated(args, "format") or ["json"]
    for fmt in formats:
        if fmt not in FORMATS:
            raise ConfigError("Invalid format: %s" % fmt)
    if args.view == View_type.ego:
        if not args.group:
            raise ConfigError("ego view needs --group")
        if args.step is None:
            raise ConfigError("ego view needs --step")

    gtd = GtdGraph()
    gtd.read_events(_events_path(args))

    if args.view == View_type.ego:
        group = normalize_group_name(args.group)
        if group is UNKNOWN_GROUP:
            raise ConfigError("Invalid ego group: %r" % args.group)
        span = args.window or _ego_span(gtd.events, group)
        timeline, summary = gtd.ego_timeline(group, span, args.step)
        stem = "ego_%s" % slugify(group)
        for i, (window, g) in enumerate(timeline, start=1):
            gtd.write_graph(g, os.path.join(
                args.out_dir, "%s_%d_%s" % (stem, i, window.slug())), formats)
        write_table(summary, os.path.join(args.out_dir,
                                          "%s_summary.csv" % stem))
        print("%d ego graphs of %s written to %s"
              % (len(timeline), group, args.out_dir))
        return 0

    g = gtd.build_view(args.view, window=args.window,
                       weighting=args.weighting)
    stem = args.view
    if args.window is not None:
        stem = "%s_%s" % (stem, args.window.slug())
    paths = gtd.write_graph(g, os.path.join(args.out_dir, stem), formats)
    print("%s: %d nodes, %d edges -> %s"
          % (args.view, g.number_of_nodes(), g.number_of_edges(),
             ", ".join(paths)))
    return 0


def cmd_analyze(args, flags):
    gtd = GtdGraph()
    gtd.read_events(_events_path(args))
    out_dir = args.out_dir

    if args.analysis == "pagerank":
        k = args.k if args.k is not None else 10
        ranking = gtd.top_k_lethal(k, damping=args.damping, tol=args.tol,
                                   max_iter=args.max_iter, mode=args.mode)
        if not ranking.converged:
            logger.warning("pagerank ranking is from an unconverged run")
        path = os.path.join(out_dir, "pagerank_top%d.json" % k)
        write_json(ranking.to_records(), path)
    elif args.analysis == "communities":
        g, partition, q = gtd.communities(args.window)
        name = "communities"
        if args.window is not None:
            name = "%s_%s" % (name, args.window.slug())
        path = os.path.join(out_dir, name + ".json")
        write_json({
            "modularity": q,
            "communities": [[key[1] for key in members]
                            for members in partition.communities()],
        }, path)
    elif args.analysis == "metrics":
        path = os.path.join(out_dir, "metrics.csv")
        write_table(gtd.era_metrics(_eras(args, flags)), path)
    elif args.analysis == "dyads":
        path = os.path.join(out_dir, "dyads.csv")
        write_table(dyads_to_frame(gtd.dyads(_eras(args, flags))), path)
    elif args.analysis == "yearly":
        frequency = gtd.yearly_frequency()
        path = os.path.join(out_dir, "yearly.csv")
        write_table(pd.DataFrame(list(frequency.items()),
                                 columns=["year", "count"]), path)
    else:
        k = args.k if args.k is not None else 5
        path = os.path.join(out_dir, "hubs.csv")
        write_table(gtd.hubs(_eras(args, flags), k=k), path)

    print("%s written to %s" % (args.analysis, path))
    return 0


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)

    try:
        config = read_key_value_file(known.config) if known.config else {}
        ap, flags = build_parser(config)
        flags.check()
    except (GtdGraphError, OSError) as e:
        print("gtdgraph: error: %s" % e, file=sys.stderr)
        return 1

    args = ap.parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level),
                        format="%(levelname)s %(name)s: %(message)s",
                        stream=sys.stderr)
    try:
        os.makedirs(args.out_dir, exist_ok=True)
        return args.func(args, flags)
    except (GtdGraphError, OSError) as e:
        print("gtdgraph: error: %s" % e, file=sys.stderr)
        return 1
