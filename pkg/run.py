"""
run.py: Command-line front door for the regular-graph Hamiltonicity toolkit.

Subcommands: construct, check, enumerate, verify, encode, decode, catalog.
Graph streams use graph6, one graph per line, on standard input and output.
"""

import argparse
import json
import logging
import os
import sys

from src.construct import (
    FAMILIES, ComplementShape, FamilyParams, FamilyParamsError, build_family, family_f, family_h,
    h_prime_variants, is_family_f_member, is_family_h_member,
)
from src.data_processing import ConfigError
from src.enumeration import (
    EnumerationTask, EnvelopeError, enumerate_connected_k_regular, enumerate_naive, write_graph6_stream,
)
from src.graph_core import GraphError, build_graph, degree_profile, graph6_decode, graph6_encode
from src.hamilton import ENGINES, SolverSettings, hamiltonian_cycle, hamiltonian_path
from src.harness import EXIT_ERROR, EXIT_OK, run_campaign
from src.output_generation import LOG_FORMAT, setup_logging, write_catalog
from src.structure import cut_vertices, is_connected, is_two_connected
from utils.parse_config import load_config

logger = logging.getLogger(__name__)

FILTERS = {
    'two-connected': is_two_connected,
    'non-hamiltonian': lambda G: hamiltonian_cycle(G) is None,
    'has-cut-vertex': lambda G: bool(cut_vertices(G)),
}


def parse_shape(text):
    """Parse a complement shape such as 'P3+P2+C3'."""
    paths, cycles = [], []
    for part in text.split('+'):
        part = part.strip()
        if len(part) < 2 or part[0] not in 'PC' or not part[1:].isdigit():
            raise FamilyParamsError(f"Cannot parse shape component {part!r}; expected P<n> or C<n>")
        (paths if part[0] == 'P' else cycles).append(int(part[1:]))
    return ComplementShape(tuple(sorted(paths, reverse=True)), tuple(sorted(cycles, reverse=True)))


def _read_graphs(stream):
    for line in stream:
        line = line.strip()
        if line:
            yield graph6_decode(line)


def properties(G, settings):
    """Structural and Hamiltonicity summary of one graph, JSON-serializable."""
    profile = degree_profile(G)
    cycle = hamiltonian_cycle(G, settings)
    path = hamiltonian_path(G, settings)
    return {
        'graph6': graph6_encode(G),
        'n': G.n,
        'edges': G.edge_count(),
        'degrees': profile.counts(),
        'regular': profile.delta_min == profile.delta_max,
        'connected': is_connected(G),
        'two_connected': is_two_connected(G),
        'cut_vertices': sorted(cut_vertices(G)),
        'hamiltonian_cycle': list(cycle.order) if cycle else None,
        'hamiltonian_path': list(path.order) if path else None,
        'family_f': is_family_f_member(G),
        'family_h': is_family_h_member(G),
    }


def cmd_construct(args, config):
    params = FamilyParams(
        family=args.family, r=args.r, t=args.t, k=args.k, n=args.n,
        variant=parse_shape(args.variant) if args.variant else None,
        connection_set=tuple(int(s) for s in args.connection_set.split(',')) if args.connection_set else (),
    )
    G = build_family(params)
    print(graph6_encode(G))
    return EXIT_OK


def cmd_check(args, config):
    settings = _settings(args, config)
    graphs = [graph6_decode(args.graph6)] if args.graph6 else _read_graphs(sys.stdin)
    for G in graphs:
        print(json.dumps(properties(G, settings)))
    return EXIT_OK


def cmd_enumerate(args, config):
    filters = tuple(FILTERS[name] for name in args.filter)
    if args.naive:
        graphs = [G for G in enumerate_naive(args.k, args.n) if all(f(G) for f in filters)]
    else:
        task = EnumerationTask(k=args.k, n=args.n, filters=filters, limit=args.limit)
        graphs = enumerate_connected_k_regular(task, config['enumeration']['envelope'],
                                               args.workers or config['enumeration']['workers'])
    count = write_graph6_stream(graphs, sys.stdout)
    logger.info(f"Wrote {count} graphs")
    return EXIT_OK


def cmd_verify(args, config):
    reports, status = run_campaign(config, only=args.only, no_exception=args.no_exception, workers=args.workers,
                                   output_dir=args.output_dir, engine=args.engine, data_dir=args.data_dir)
    for report in reports:
        print(f"{report.claim}: {report.verdict} ({report.instances} instances, "
              f"{len(report.counterexamples)} counterexamples)")
    return status


def cmd_encode(args, config):
    """Read 'n' on the first line then one 'u v' edge per line; print graph6."""
    lines = [line.split() for line in sys.stdin if line.strip()]
    if not lines:
        raise GraphError("Empty edge list")
    G = build_graph(int(lines[0][0]), [(int(u), int(v)) for u, v in lines[1:]])
    print(graph6_encode(G))
    return EXIT_OK


def cmd_decode(args, config):
    for G in _read_graphs(sys.stdin):
        print(f"{G.n} {G.edge_count()}")
        for u, v in G.edges():
            print(f"{u} {v}")
    return EXIT_OK


def cmd_catalog(args, config):
    rows = []

    def add(family, params, G):
        rows.append({'family': family, 'parameters': params, 'n': G.n, 'graph6': graph6_encode(G),
                     'degree_profile': json.dumps(degree_profile(G).counts())})

    for r in range(2, args.max_r + 1):
        for t in range(2, 2 * r - 1, 2):
            add('FamilyF', f"r={r},t={t}", family_f(r, t))
    for r in range(1, args.max_r + 1):
        for t in range(2, 2 * r + 1, 2):
            for shape in h_prime_variants(r, t):
                add('FamilyH', f"r={r},t={t},variant={shape.describe()}", family_h(r, t, shape))
    write_catalog(rows, args.output)
    print(f"Catalog of {len(rows)} graphs written to {args.output}")
    return EXIT_OK


def _settings(args, config):
    section = dict(config['hamilton'])
    if getattr(args, 'engine', None):
        section['engine'] = args.engine
    return SolverSettings.from_config(section)


def build_parser():
    parser = argparse.ArgumentParser(description="Hamiltonicity toolkit for connected regular graphs")
    parser.add_argument('--config', default='config.json', help="Configuration file (default: config.json)")
    parser.add_argument('--verbose', action='store_true', help="Log at DEBUG level")
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('construct', help="Build a family member and print its graph6")
    p.add_argument('--family', required=True, choices=FAMILIES)
    for name in ('r', 't', 'k', 'n'):
        p.add_argument(f'--{name}', type=int)
    p.add_argument('--variant', help="Complement shape for Hprime_rt/FamilyH, e.g. P3+P2+C3")
    p.add_argument('--connection-set', help="Comma-separated circulant offsets")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser('check', help="Report properties of graph6 graphs read from stdin")
    p.add_argument('--graph6', help="Check this graph instead of reading stdin")
    p.add_argument('--engine', choices=ENGINES)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser('enumerate', help="Stream connected k-regular graphs as graph6")
    p.add_argument('--k', type=int, required=True)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--filter', action='append', default=[], choices=sorted(FILTERS))
    p.add_argument('--limit', type=int)
    p.add_argument('--workers', type=int)
    p.add_argument('--naive', action='store_true', help="Use the independent oracle generator")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser('verify', help="Run the verification campaign from the configuration")
    p.add_argument('--only', nargs='+', metavar='CLAIM')
    p.add_argument('--no-exception', action='store_true', help="Ignore all declared exceptions")
    p.add_argument('--workers', type=int)
    p.add_argument('--output-dir')
    p.add_argument('--engine', choices=ENGINES)
    p.add_argument('--data-dir', default='data')
    p.set_defaults(func=cmd_verify)

    sub.add_parser('encode', help="Edge list on stdin to graph6").set_defaults(func=cmd_encode)
    sub.add_parser('decode', help="graph6 on stdin to edge lists").set_defaults(func=cmd_decode)

    p = sub.add_parser('catalog', help="Write a CSV manifest of family members")
    p.add_argument('--max-r', type=int, default=3)
    p.add_argument('--output', default='catalog.csv')
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    if args.command == 'verify' and not os.path.isfile(args.config):
        logger.error(f"Configuration file {args.config} not found; verify needs an explicit campaign")
        return EXIT_ERROR
    try:
        config = load_config(args.config)
    except ConfigError as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_ERROR
    setup_logging(config['logging']['directory'], level)
    try:
        return args.func(args, config)
    except (EnvelopeError, FamilyParamsError, GraphError, ConfigError, ValueError) as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_ERROR
    except Exception as e:
        logger.exception(f"{args.command} failed unexpectedly: {e}")
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
