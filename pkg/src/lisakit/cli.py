"""Command-line entry point: run, serve, inspect.

Exit codes: 0 success, 1 input error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .data_model import join_dataset, parse_geometry, parse_values
from .errors import InputError, LisaKitError
from .pipeline import (
    METHOD_ORDER,
    ResultSet,
    RunConfig,
    cache_lookup,
    cache_store,
    make_cache_key,
    run_analysis,
    write_results,
)


def default_cache_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "lisakit"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lisakit",
        description="Spatiotemporal cluster analysis over areal data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the analysis and write a results file")
    run.add_argument("--geometry", required=True, help="GeoJSON FeatureCollection path")
    run.add_argument("--data", required=True, help="long-format CSV path")
    run.add_argument("--id-col", required=True, help="CSV column holding location ids")
    run.add_argument("--time-col", required=True, help="CSV column holding timestep labels")
    run.add_argument("--value-col", required=True, help="CSV column holding values")
    run.add_argument("--id-field", default=None,
                     help="GeoJSON property holding location ids (default: same as --id-col)")
    run.add_argument("--name-field", default=None, help="GeoJSON property holding display names")
    run.add_argument("--methods", default="local-moran,local-geary,gi-star",
                     help=f"comma-separated subset of {{{','.join(METHOD_ORDER)}}} "
                          "(default: %(default)s)")
    run.add_argument("--contiguity", choices=["queen", "rook"], default="queen",
                     help="neighbor rule (default: %(default)s)")
    run.add_argument("--snap-precision", type=int, default=6,
                     help="decimal places for coordinate snapping (default: %(default)s)")
    run.add_argument("--permutations", type=int, default=999,
                     help="permutation count M (default: %(default)s)")
    run.add_argument("--alpha", type=float, default=0.05,
                     help="significance cutoff (default: %(default)s)")
    run.add_argument("--seed", type=int, default=0, help="master seed (default: %(default)s)")
    run.add_argument("--out", default="results.json", help="output path (default: %(default)s)")
    run.add_argument("--cache-dir", default=None,
                     help="results cache directory (default: platform cache dir)")
    run.add_argument("--no-cache", action="store_true", help="bypass the results cache")
    run.add_argument("--store-local-sketches", action="store_true",
                     help="store per-location distribution sketches (larger files)")
    run.add_argument("--threads", type=int, default=0,
                     help="worker threads, 0 = auto (default: %(default)s)")

    serve = sub.add_parser("serve", help="serve the dashboard for a results/geometry pair")
    serve.add_argument("--results", required=True, help="results JSON path")
    serve.add_argument("--geometry", required=True, help="GeoJSON path")
    serve.add_argument("--port", type=int, default=8080, help="port (default: %(default)s)")

    inspect = sub.add_parser("inspect", help="print label tables from a results file")
    inspect.add_argument("--results", required=True, help="results JSON path")
    inspect.add_argument("--location", default=None, help="location id (default: global labels)")
    inspect.add_argument("--timestep", default=None, help="restrict to one timestep")
    return parser


def _read(path: str, kind: str) -> bytes:
    p = Path(path)
    if not p.is_file():
        raise InputError(f"{kind} file not found: {path}")
    return p.read_bytes()


def cmd_run(args) -> int:
    geometry_bytes = _read(args.geometry, "geometry")
    values_bytes = _read(args.data, "data")
    config = RunConfig(
        methods=tuple(m.strip() for m in args.methods.split(",") if m.strip()),
        contiguity=args.contiguity,
        snap_precision=args.snap_precision,
        alpha=args.alpha,
        permutations=args.permutations,
        master_seed=args.seed,
        sketch_size=49,
        store_local_sketches=args.store_local_sketches,
    ).validated()

    cache_dir = Path(args.cache_dir) if args.cache_dir else default_cache_dir()
    key = make_cache_key(geometry_bytes, values_bytes, config)
    rs = None if args.no_cache else cache_lookup(key, cache_dir)
    cached = rs is not None

    if rs is None:
        areas = parse_geometry(geometry_bytes, args.id_field or args.id_col, args.name_field)
        table = parse_values(values_bytes, args.id_col, args.time_col, args.value_col)
        dataset = join_dataset(areas, table)
        rs = run_analysis(dataset, config, threads=args.threads)
        if not args.no_cache:
            cache_store(key, rs, cache_dir)

    write_results(rs, args.out)
    warnings = rs.payload["warnings"]
    print(
        f"{len(rs.location_ids)} locations x {len(rs.timesteps)} timesteps, "
        f"methods: {', '.join(rs.methods)}, warnings: {len(warnings)}"
        + (" (cache hit)" if cached else "")
    )
    print(f"results written to {args.out}")
    return 0


def cmd_serve(args) -> int:
    from .server import make_server

    server = make_server(args.results, args.geometry, args.port)
    host, port = server.server_address[:2]
    print(f"serving dashboard at http://{host}:{port}/ (Ctrl-C to stop)")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def _label_table(header: list[str], rows: list[tuple[str, list[str]]]) -> str:
    name_w = max(len(r[0]) for r in rows)
    col_ws = [max(len(h), max(len(r[1][j]) for r in rows)) for j, h in enumerate(header)]
    lines = [" " * name_w + "  " + "  ".join(h.ljust(col_ws[j]) for j, h in enumerate(header))]
    for name, cells in rows:
        lines.append(name.ljust(name_w) + "  " + "  ".join(c.ljust(col_ws[j]) for j, c in enumerate(cells)))
    return "\n".join(lines)


def cmd_inspect(args) -> int:
    try:
        rs = ResultSet.from_json(Path(args.results).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise InputError(f"results file not found: {args.results}")
    except ValueError as exc:
        raise InputError(f"results file is not valid JSON: {exc}")

    timesteps = [str(t) for t in rs.timesteps]
    if args.timestep is not None:
        if str(args.timestep) not in timesteps:
            raise InputError(f"unknown timestep {args.timestep!r}")
        timesteps = [str(args.timestep)]

    if args.location is None:
        rows = [
            (m, [rs.payload["global"][t][m]["label"] for t in timesteps])
            for m in rs.methods
        ]
        print("global labels")
    else:
        ids = rs.location_ids
        if args.location not in ids:
            raise InputError(f"unknown location {args.location!r}")
        li = ids.index(args.location)
        rows = [
            (m, [rs.payload["local"][t][m][li]["label"] for t in timesteps])
            for m in rs.methods
        ]
        rows.append(
            ("aggregate", [rs.payload["aggregate"][t][li]["core"] for t in timesteps])
        )
        print(f"labels for location {args.location}")
    print(_label_table(timesteps, rows))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return cmd_run(args)
        if args.command == "serve":
            return cmd_serve(args)
        return cmd_inspect(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except LisaKitError as exc:
        print(f"runtime failure: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"runtime failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
