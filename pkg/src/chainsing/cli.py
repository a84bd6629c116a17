"""Command-line entry point.

Subcommands: invariants, seifert, verify, critvals, movie.  All data output
is JSON on stdout (timings live under "meta" so payloads are deterministic);
movies additionally write CSV and SVG frames.  Exit codes: 0 all checks pass,
1 verification mismatch, 2 usage or validation error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from fractions import Fraction

from . import critical, invariants as inv, lattice as lat, movie as mov
from .invariants import ChainTuple, ChainTupleError
from .series import MatrixError, SeriesError

SCHEMA = 1

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


def _digits() -> int:
    return int(os.environ.get("CHAINSING_DIGITS", "17"))


def _jsonable(obj):
    if isinstance(obj, float):
        return float(format(obj, f".{_digits()}g"))
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, complex):
        return {"re": _jsonable(obj.real), "im": _jsonable(obj.imag)}
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _emit(payload: dict, started: float) -> None:
    payload["meta"] = {"elapsed_s": round(time.perf_counter() - started, 6)}
    json.dump(_jsonable(payload), sys.stdout, indent=2)
    sys.stdout.write("\n")


def _parse_tuple(text: str) -> ChainTuple:
    a = ChainTuple.parse(text)
    if len(a) == 0:
        raise ChainTupleError("empty tuple not accepted on the command line")
    return a


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def cmd_invariants(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    a = _parse_tuple(args.tuple)
    bundle = inv.invariant_bundle(a)
    _emit(
        {
            "schema": SCHEMA,
            "tuple": list(a.entries),
            "mu": bundle.mu,
            "d": bundle.d,
            "r": list(bundle.r),
            "alpha": list(bundle.alpha),
            "alpha_prime": list(bundle.alpha_prime),
            "weights": list(bundle.weights),
        },
        started,
    )
    return EXIT_OK


def cmd_seifert(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    a = _parse_tuple(args.tuple)
    methods = ["series", "inductive", "lattice"] if args.method == "all" else [args.method]
    if any(m in ("inductive", "lattice") for m in methods) and any(e < 2 for e in a.entries):
        raise ChainTupleError(f"method(s) {methods} require all entries >= 2")
    results = {}
    for m in methods:
        if m == "series":
            results[m] = inv.seifert_series(a)
        elif m == "inductive":
            results[m] = inv.seifert_inductive(a)
        else:
            results[m] = lat.seifert_via_petals(a)
    colors = {m: list(r.colors) for m, r in results.items()}
    agree = len({tuple(c) for c in colors.values()}) == 1
    first = next(iter(results.values()))
    payload = {
        "schema": SCHEMA,
        "tuple": list(a.entries),
        "size": first.size,
        "colors": colors if args.method == "all" else colors[methods[0]],
        "matrix": [list(row) for row in first.dense().rows],
        "status": "pass" if agree else "mismatch",
    }
    _emit(payload, started)
    return EXIT_OK if agree else EXIT_MISMATCH


def _verify_one(a: ChainTuple) -> dict[str, bool]:
    checks = {rep.name: rep.ok for rep in inv.identity_suite(a)}
    seif = inv.seifert_series(a)
    if all(e >= 2 for e in a.entries):
        checks["three_route_seifert"] = (
            seif == inv.seifert_inductive(a) == lat.seifert_via_petals(a)
        )
    for parity in (0, 1):
        lattice = lat.SeifertLattice.from_rainbow(seif, parity)
        h = lat.monodromy_matrix(lattice)
        checks[f"twist_composition_parity{parity}"] = (
            lat.monodromy_as_twists(lattice) == h
        )
        form = lat.intersection_form(lattice)
        checks[f"form_preserved_parity{parity}"] = (
            h.transpose() @ form @ h == form
        )
    return checks


def cmd_verify(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    if args.sweep:
        settings = dict(part.split("=") for part in args.sweep.split(","))
        max_entry = int(settings.get("max_entry", "4"))
        max_len = int(settings.get("max_len", "4"))
        tuples: list[ChainTuple] = []

        def build(prefix: tuple[int, ...]) -> None:
            if prefix:
                tuples.append(ChainTuple(prefix))
            if len(prefix) < max_len:
                for e in range(2, max_entry + 1):
                    build(prefix + (e,))

        build(())
        reports = {}
        ok = True
        for a in tuples:
            checks = _verify_one(a)
            ok = ok and all(checks.values())
            reports[str(a)] = {"status": "pass" if all(checks.values()) else "fail"}
        _emit({"schema": SCHEMA, "sweep": args.sweep, "tuples": reports,
               "status": "pass" if ok else "fail"}, started)
        return EXIT_OK if ok else EXIT_MISMATCH
    a = _parse_tuple(args.tuple)
    checks = _verify_one(a)
    ok = all(checks.values())
    seif = inv.seifert_series(a)
    monodromy = inv.monodromy_from_seifert(a)
    _emit(
        {
            "schema": SCHEMA,
            "tuple": list(a.entries),
            "checks": checks,
            "seifert": {"size": seif.size, "colors": list(seif.colors)},
            "monodromy": [list(row) for row in monodromy.rows],
            "status": "pass" if ok else "fail",
        },
        started,
    )
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_critvals(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    a = _parse_tuple(args.tuple)
    if args.which == "morsification":
        data = critical.morsification_critical_values(a)
    elif args.which == "fiber":
        data = critical.fa_critical_values(a)
    else:
        data = critical.branch_points(a)  # first entry plays the a_0 role
    payload = {
        "schema": SCHEMA,
        "tuple": list(a.entries),
        "which": args.which,
        "count": data.count,
        "radius": data.radius,
        "base_angle": data.base_angle,
    }
    if data.exact_radius is not None:
        const, expo = data.exact_radius
        payload["exact_radius"] = {"constant": const, "exponent": expo}
    _emit(payload, started)
    return EXIT_OK


def cmd_movie(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    a_tilde = _parse_tuple(args.tuple)
    curve = critical.critv_curve(a_tilde)  # validates a_1 > 1
    a0 = a_tilde.entries[0]
    config = mov.MovieConfig(
        d=curve.d,
        mu=curve.mu,
        c=float(curve.c),
        max_step=1.0 / args.steps,
        samples_out=args.frames,
        rotation=2 * math.pi * args.rotate / curve.d,
        tolerance=args.tol,
    )
    result = mov.track(config)
    if result.report is None:
        return _fail("no collision detected on the tracked path", EXIT_NUMERICAL)
    out_dir = args.out or f"movie_{str(a_tilde).replace(',', '_')}"
    csv_path = mov.emit_csv(result, os.path.join(out_dir, "movie.csv"))
    svg_paths = mov.emit_svg_frames(result, out_dir)
    alpha, _ = mov.find_alpha(curve.d, curve.mu, float(curve.c))
    report = result.report
    egervary = mov.verify_egervary_ordering(result)
    payload = {
        "schema": SCHEMA,
        "tuple": list(a_tilde.entries),
        "d": curve.d,
        "mu": curve.mu,
        "c": curve.c,
        "a0": a0,
        "colliding_pair": list(report.colliding_pair),
        "arc_separation": report.arc_separation,
        "direction": report.direction,
        "collision_eps": report.collision_eps,
        "alpha": alpha,
        "egervary_ok": egervary.ok,
        "csv": csv_path,
        "frames": len(svg_paths),
    }
    _emit(payload, started)
    if report.arc_separation != curve.mu:
        return EXIT_MISMATCH
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chainsing",
        description="Seifert forms, monodromy identities, critical values and "
        "root movies of chain singularities",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="mu, d, r_i, alpha, alpha', weights")
    p.add_argument("tuple")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("seifert", help="Seifert matrix by one or all routes")
    p.add_argument("tuple")
    p.add_argument("--method", choices=["series", "inductive", "lattice", "all"],
                   default="series")
    p.set_defaults(func=cmd_seifert)

    p = sub.add_parser("verify", help="exact identity suite")
    p.add_argument("tuple", nargs="?", default=None)
    p.add_argument("--sweep", default=None, metavar="max_entry=4,max_len=4")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("critvals", help="critical value data")
    p.add_argument("tuple")
    p.add_argument("--which", choices=["morsification", "fiber", "branch"],
                   default="morsification")
    p.set_defaults(func=cmd_critvals)

    p = sub.add_parser("movie", help="track the root movie of (a_0, a_1, ...)")
    p.add_argument("tuple")
    p.add_argument("--out", default=None)
    p.add_argument("--frames", type=int, default=120)
    p.add_argument("--rotate", type=int, default=0)
    p.add_argument("--steps", type=int, default=500)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--max-step", type=float, default=None,
                   help="override the base step 1/steps")
    p.set_defaults(func=cmd_movie)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and not args.sweep and args.tuple is None:
        return _fail("verify needs a tuple or --sweep", EXIT_USAGE)
    if args.command == "movie" and args.max_step is not None:
        args.steps = max(1, round(1.0 / args.max_step))
    try:
        return args.func(args)
    except (ChainTupleError, SeriesError, MatrixError, lat.LatticeError, ValueError) as exc:
        return _fail(str(exc), EXIT_USAGE)
    except (mov.TrackingError, critical.InternalInconsistencyError) as exc:
        return _fail(str(exc), EXIT_NUMERICAL)


if __name__ == "__main__":
    sys.exit(main())
