"""Command-line front end.

Subcommands: params, construct, simulate, bounds, tables, sweep.  Exit
codes: 0 success, 2 bad input, 3 enumeration cap exceeded, 4 file I/O,
5 validation or schema failure.  PGCACHE_CAP overrides the default cap
of 10^7 line-graph vertices.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .bounds import SystemTriple, bounds_report
from .compare import asymptotic_sweep, fraction_text, table1, table3
from .linegraph import CapacityError, ConstructionParams, DEFAULT_VERTEX_CAP
from .scheme import (
    DecodeError,
    SchemaError,
    build_scheme,
    demand_stream,
    deserialize,
    packet_trace_bytes,
    params_from,
    run_round,
    run_trials,
    serialize,
)

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_CAP = 3
EXIT_IO = 4
EXIT_VALIDATION = 5


def _default_cap() -> int:
    env = os.environ.get("PGCACHE_CAP")
    if env:
        return int(env)
    return DEFAULT_VERTEX_CAP


def _add_construction_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-k", type=int, required=True, help="ambient dimension")
    parser.add_argument("-m", type=int, required=True, help="subfile set size minus one")
    parser.add_argument("-t", type=int, required=True, help="user space dimension")
    parser.add_argument("-q", type=int, required=True, help="field size (prime power)")


def cmd_params(args) -> int:
    cp = ConstructionParams(k=args.k, m=args.m, t=args.t, q=args.q)
    params = params_from(cp)
    if args.format == "json":
        print(json.dumps({
            "users": params.users,
            "subpacketization": params.subpacketization,
            "missing_per_user": params.missing_per_user,
            "missing_per_subfile": params.missing_per_subfile,
            "group_size": params.group_size,
            "cached_fraction": str(params.cached_fraction),
            "rate": str(params.rate),
            "transmissions": params.transmissions,
        }, indent=2))
    else:
        print(f"K (users)               = {params.users}")
        print(f"F (subpacketization)    = {params.subpacketization}")
        print(f"D (missing per user)    = {params.missing_per_user}")
        print(f"c (missing per subfile) = {params.missing_per_subfile}")
        print(f"d (group size / gain)   = {params.group_size}")
        print(f"M/N (cached fraction)   = {fraction_text(params.cached_fraction)}")
        print(f"R (rate)                = {fraction_text(params.rate)}")
        print(f"R*F (transmissions)     = {params.transmissions}")
    return EXIT_OK


def cmd_construct(args) -> int:
    cp = ConstructionParams(k=args.k, m=args.m, t=args.t, q=args.q)
    cap = args.cap if args.cap is not None else _default_cap()
    instance = build_scheme(cp, max_vertices=cap)
    text = serialize(instance)
    with open(args.output, "w", encoding="ascii") as fh:
        fh.write(text)
    p = instance.params
    print(f"wrote {args.output}: K={p.users} F={p.subpacketization} "
          f"D={p.missing_per_user} c={p.missing_per_subfile} d={p.group_size} "
          f"R={p.rate} packets={instance.delivery.num_cliques}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    with open(args.scheme, "r", encoding="ascii") as fh:
        instance = deserialize(fh.read())
    extra = None
    if args.fixed_demands:
        k = instance.params.users
        n = args.files if args.files else k
        extra = [[0] * k]
        if n >= k:
            extra.append(list(range(k)))
    report = run_trials(
        instance,
        trials=args.trials,
        seed=args.seed,
        num_files=args.files,
        subfile_len=args.subfile_len,
        extra_demands=extra,
    )
    ok = report.trials * report.users - report.failures
    print(f"trials          = {report.trials}")
    print(f"decode success  = {ok}/{report.trials * report.users} user-rounds")
    print(f"packets/round   = {report.packet_count}")
    print(f"measured R*F    = {fraction_text(report.measured_rf * instance.params.subpacketization)}")
    print(f"measured R      = {fraction_text(report.measured_rf)}")
    if args.trace:
        from .scheme import FileStore
        n = args.files if args.files else instance.params.users
        store = FileStore.random(n, instance.params.subpacketization,
                                 args.subfile_len, seed=args.seed)
        demands = next(demand_stream(args.seed, instance.params.users, n))
        packets = run_round(instance, store, demands)
        with open(args.trace, "wb") as fh:
            fh.write(packet_trace_bytes(packets))
        print(f"trace           = {args.trace} ({len(packets)} packets)")
    if not report.ok:
        print(f"DECODE FAILURES = {report.failures}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def cmd_bounds(args) -> int:
    st = SystemTriple(users=args.K, subpacketization=args.F, missing_per_user=args.D)
    report = bounds_report(st)
    if args.format == "json":
        print(json.dumps(report.as_dict(), indent=2))
    elif args.format == "csv":
        d = report.as_dict()
        keys = list(d.keys())
        print(",".join(keys))
        print(",".join(str(d[k]) for k in keys))
    else:
        bire = report.biregular_bound if report.biregular_bound is not None else "n/a"
        print(f"biregular bound : R*F >= {bire}")
        if report.biregular_note:
            print(f"                  ({report.biregular_note})")
        print(f"pda bound       : R*F >= {report.pda_bound}")
        print(f"cutset bound    : R*F >= {report.cutset_bound} "
              f"(exact {fraction_text(report.cutset_exact)})")
    return EXIT_OK


def cmd_tables(args) -> int:
    table = table1() if args.which == "table1" else table3()
    print(table.to_csv() if args.format == "csv" else table.to_text())
    return EXIT_OK


def cmd_sweep(args) -> int:
    report = asymptotic_sweep(args.q, args.alpha, range(args.start, args.end + 1))
    table = report.to_table()
    print(table.to_csv() if args.format == "csv" else table.to_text())
    print(f"all checks pass: {report.all_ok}")
    return EXIT_OK if report.all_ok else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pgcache",
        description="subspace-geometry coded caching: construct, simulate, bound",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="closed-form scheme parameters")
    _add_construction_flags(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("construct", help="build a scheme and write its document")
    _add_construction_flags(p)
    p.add_argument("-o", "--output", required=True, help="scheme document path")
    p.add_argument("--cap", type=int, default=None,
                   help="line-graph vertex cap (default PGCACHE_CAP or 10^7)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("simulate", help="run seeded demand rounds on a scheme document")
    p.add_argument("scheme", help="scheme document path")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--files", type=int, default=None,
                   help="files in the store (default: one per user)")
    p.add_argument("--subfile-len", type=int, default=64)
    p.add_argument("--fixed-demands", action="store_true",
                   help="also run the all-equal and all-distinct demand vectors")
    p.add_argument("--trace", default=None, help="write a binary packet trace here")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bounds", help="lower bounds for a (K, F, D) triple")
    p.add_argument("-K", type=int, required=True)
    p.add_argument("-F", type=int, required=True)
    p.add_argument("-D", type=int, required=True)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("tables", help="reproduce the reference tables")
    p.add_argument("which", choices=("table1", "table3"))
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("sweep", help="growth checks at fixed alpha")
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--start", type=int, required=True, help="first k-t")
    p.add_argument("--end", type=int, required=True, help="last k-t (inclusive)")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except DecodeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
