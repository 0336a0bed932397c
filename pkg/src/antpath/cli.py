"""Command-line front door.

Subcommands: build, query, oracle, serve, export-dot, stats.

Exit codes: 0 success, 1 I/O or parse failure, 2 unknown term,
3 no feasible path, 4 oracle blow-up guard, 5 port in use.
"""

from __future__ import annotations

import argparse
import json
import os
import secrets
import socket
import sys

from . import aco
from .corpus import normalize_term, parse_definitions, parse_qa_log, to_transaction
from .errors import (
    CorpusParseError,
    InvalidParameterError,
    InvalidTermError,
    NoPathError,
    OracleTooLargeError,
    SnapshotError,
    UnknownTermError,
)
from .fpgraph import FPGraph, suggest_terms

EXIT_OK = 0
EXIT_IO = 1
EXIT_UNKNOWN_TERM = 2
EXIT_NO_PATH = 3
EXIT_ORACLE_GUARD = 4
EXIT_PORT_IN_USE = 5


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _read_file(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_graph(path: str) -> FPGraph:
    return FPGraph.restore(json.loads(_read_file(path)))


def _parse_params(args: argparse.Namespace) -> aco.ACOParams:
    overrides = {}
    for flag, field in [
        ("alpha", "alpha"),
        ("beta", "beta"),
        ("rho", "rho"),
        ("q", "q_factor"),
        ("tau0", "tau0"),
        ("ants", "n_ants"),
        ("iters", "max_iterations"),
        ("stagnation", "stagnation_window"),
    ]:
        value = getattr(args, flag, None)
        if value is not None:
            overrides[field] = value
    return aco.merge_params(aco.ACOParams(), overrides)


def cmd_build(args: argparse.Namespace) -> int:
    try:
        definitions = parse_definitions(_read_file(args.definitions))
    except OSError as exc:
        return _fail(f"cannot read {args.definitions}: {exc}", EXIT_IO)
    except CorpusParseError as exc:
        return _fail(f"{args.definitions}: {exc}", EXIT_IO)

    qa = []
    if args.qa:
        try:
            qa = parse_qa_log(_read_file(args.qa))
        except OSError as exc:
            return _fail(f"cannot read {args.qa}: {exc}", EXIT_IO)
        except CorpusParseError as exc:
            return _fail(f"{args.qa}: {exc}", EXIT_IO)

    try:
        graph = FPGraph(args.sigma)
    except InvalidParameterError as exc:
        return _fail(str(exc), EXIT_IO)
    for defn in definitions:
        graph.insert_branch(to_transaction(defn))
    for txn in qa:
        graph.apply_qa_transaction(txn)
    graph.promote_associations()

    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(graph.snapshot_json())
    except OSError as exc:
        return _fail(f"cannot write {args.out}: {exc}", EXIT_IO)
    print(
        f"nodes={len(graph.nodes)} edges={len(graph.edges)} "
        f"associations={graph.association_count()} unmatched={len(graph.unmatched_log)}"
    )
    return EXIT_OK


def _known_set(raw: str | None) -> frozenset[str]:
    if not raw:
        return frozenset()
    return frozenset(normalize_term(part) for part in raw.split(",") if part.strip())


def cmd_query(args: argparse.Namespace) -> int:
    try:
        graph = _load_graph(args.graph)
    except (OSError, json.JSONDecodeError, SnapshotError) as exc:
        return _fail(f"cannot load {args.graph}: {exc}", EXIT_IO)
    try:
        params = _parse_params(args)
        seed = args.seed
        drawn = seed is None
        if drawn:
            seed = secrets.randbits(63)
        params = aco.merge_params(params, {"seed": seed})
        term = normalize_term(args.term)
        path = aco.learning_path(graph, term, _known_set(args.known), params)
    except UnknownTermError as exc:
        enriched = UnknownTermError(exc.term, tuple(suggest_terms(graph, exc.term)))
        return _fail(str(enriched), EXIT_UNKNOWN_TERM)
    except NoPathError as exc:
        return _fail(str(exc), EXIT_NO_PATH)
    except (InvalidParameterError, InvalidTermError) as exc:
        return _fail(str(exc), EXIT_UNKNOWN_TERM)

    if args.json:
        doc = path.to_json_dict()
        doc["seed"] = seed
        print(json.dumps(doc, sort_keys=True))
    else:
        print("path: " + " -> ".join(path.path))
        print("recommended: " + ", ".join(sorted(path.recommended_terms)))
        print(f"associations: {path.association_count}")
        print(f"iterations: {path.iterations_run}")
        if drawn:
            print(f"seed: {seed} (drawn; pass --seed {seed} to reproduce)")
        else:
            print(f"seed: {seed}")
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    try:
        graph = _load_graph(args.graph)
    except (OSError, json.JSONDecodeError, SnapshotError) as exc:
        return _fail(f"cannot load {args.graph}: {exc}", EXIT_IO)
    try:
        term = normalize_term(args.term)
        path = aco.brute_force_oracle(graph, term, _known_set(args.known))
    except UnknownTermError as exc:
        enriched = UnknownTermError(exc.term, tuple(suggest_terms(graph, exc.term)))
        return _fail(str(enriched), EXIT_UNKNOWN_TERM)
    except NoPathError as exc:
        return _fail(str(exc), EXIT_NO_PATH)
    except OracleTooLargeError as exc:
        return _fail(str(exc), EXIT_ORACLE_GUARD)
    except (InvalidParameterError, InvalidTermError) as exc:
        return _fail(str(exc), EXIT_UNKNOWN_TERM)
    print(json.dumps(path.to_json_dict(), sort_keys=True))
    return EXIT_OK


def _port_free(host: str, port: int) -> bool:
    with socket.socket(socket.AF_INET, socket.SOCK_STREAM) as sock:
        sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        try:
            sock.bind((host, port))
        except OSError:
            return False
    return True


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    config: dict = {}
    config_path = args.config or os.environ.get("SERVICE_CONFIG")
    if config_path:
        try:
            config = json.loads(_read_file(config_path))
        except (OSError, json.JSONDecodeError) as exc:
            return _fail(f"cannot load config {config_path}: {exc}", EXIT_IO)

    graph_path = args.graph or os.environ.get("GRAPH_PATH") or config.get("graph")
    if not graph_path:
        return _fail("no graph given (use --graph, GRAPH_PATH or the config file)", EXIT_IO)
    try:
        graph = _load_graph(graph_path)
    except (OSError, json.JSONDecodeError, SnapshotError) as exc:
        return _fail(f"cannot load {graph_path}: {exc}", EXIT_IO)

    port = args.port or int(os.environ.get("SERVICE_PORT") or config.get("port") or 8000)
    host = args.host or config.get("host", "127.0.0.1")
    try:
        params = aco.merge_params(aco.ACOParams(), config.get("params", {}))
    except InvalidParameterError as exc:
        return _fail(f"bad params in config: {exc}", EXIT_IO)

    if not _port_free(host, port):
        return _fail(f"port {port} is already in use", EXIT_PORT_IN_USE)
    app = create_app(graph, params)
    uvicorn.run(app, host=host, port=port, log_level="warning")
    return EXIT_OK


def cmd_export_dot(args: argparse.Namespace) -> int:
    try:
        graph = _load_graph(args.graph)
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(graph.to_dot())
    except (OSError, json.JSONDecodeError, SnapshotError) as exc:
        return _fail(str(exc), EXIT_IO)
    return EXIT_OK


def cmd_stats(args: argparse.Namespace) -> int:
    try:
        graph = _load_graph(args.graph)
    except (OSError, json.JSONDecodeError, SnapshotError) as exc:
        return _fail(f"cannot load {args.graph}: {exc}", EXIT_IO)
    histogram: dict[int, int] = {}
    for edge in graph.edges.values():
        histogram[edge.frequency] = histogram.get(edge.frequency, 0) + 1
    print(f"sigma: {graph.sigma}")
    print(f"nodes: {len(graph.nodes)}")
    print(f"edges: {len(graph.edges)}")
    print(f"associations: {graph.association_count()}")
    print("frequency histogram: " + ", ".join(f"{f}x{histogram[f]}" for f in sorted(histogram)))
    print(f"unmatched log: {len(graph.unmatched_log)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="antpath", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a graph snapshot from corpora")
    p.add_argument("--definitions", required=True)
    p.add_argument("--qa")
    p.add_argument("--sigma", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("query", help="run the ant search for a term")
    p.add_argument("--graph", required=True)
    p.add_argument("--term", required=True)
    p.add_argument("--known")
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--rho", type=float)
    p.add_argument("--q", type=float)
    p.add_argument("--tau0", type=float)
    p.add_argument("--ants", type=int)
    p.add_argument("--iters", type=int)
    p.add_argument("--stagnation", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("oracle", help="exhaustive reference search")
    p.add_argument("--graph", required=True)
    p.add_argument("--term", required=True)
    p.add_argument("--known")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("serve", help="serve the HTTP API")
    p.add_argument("--graph")
    p.add_argument("--port", type=int)
    p.add_argument("--host")
    p.add_argument("--config")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("export-dot", help="write a Graphviz rendering")
    p.add_argument("--graph", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("stats", help="print graph statistics")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


def run() -> None:
    sys.exit(main())
